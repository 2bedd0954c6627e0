// SPDX-License-Identifier: Apache-2.0

//! Text formats for functions:
//! `bin:<0/1 per entry>`, `hex:<digit per 4 entries>`, `profile:b0,...,bn`
//! and `formula:<expression>`.

use super::table::arity_for_len;
use super::{BoolFunError, SymmetricProfile, TruthTable};
use crate::formula;

fn parse_err(msg: impl Into<String>) -> BoolFunError {
    BoolFunError::Parse(msg.into())
}

pub fn parse_function(text: &str) -> Result<TruthTable, BoolFunError> {
    let (kind, payload) = text
        .split_once(':')
        .ok_or_else(|| parse_err(format!("missing format prefix in `{text}`")))?;
    match kind.trim() {
        "bin" => parse_bin(payload.trim()),
        "hex" => parse_hex(payload.trim()),
        "profile" => parse_profile(payload.trim()).map(|p| p.to_table()),
        "formula" => {
            let ast = formula::parse_formula(payload).map_err(|e| parse_err(e.to_string()))?;
            ast.to_truth_table().map_err(|e| parse_err(e.to_string()))
        }
        other => Err(parse_err(format!("unknown format `{other}`"))),
    }
}

fn parse_bin(s: &str) -> Result<TruthTable, BoolFunError> {
    let bits = s
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(parse_err(format!("bad bit `{c}` at position {i}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    TruthTable::from_bits(&bits)
}

fn parse_hex(s: &str) -> Result<TruthTable, BoolFunError> {
    let digits = s
        .chars()
        .enumerate()
        .map(|(i, c)| {
            c.to_digit(16)
                .ok_or_else(|| parse_err(format!("bad hex digit `{c}` at position {i}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let arity = arity_for_len(digits.len() * 4)?;
    Ok(TruthTable::from_fn(arity, |m| (digits[m / 4] >> (m % 4)) & 1 == 1))
}

fn parse_profile(s: &str) -> Result<SymmetricProfile, BoolFunError> {
    let bits = s
        .split(',')
        .map(|tok| match tok.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            t => Err(parse_err(format!("bad profile entry `{t}`"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    SymmetricProfile::new(bits)
}
