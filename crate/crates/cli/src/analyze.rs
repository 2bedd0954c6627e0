// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use exactq::boolfun::{
    decision_tree_depth, degree, families, is_and_isomorphic, is_monotone, npn_canonical, symmetric_profile,
    SymmetricProfile, TruthTable, MAX_DEPTH_ARITY, MAX_NPN_ARITY,
};
use exactq::formula::{recognize_read_once, MAX_READ_ONCE_ARITY};
use serde_json::{json, Value};

pub const ANALYZE_SCHEMA: &str = "exactq.analyze/1";

/// Named symmetric family of a profile, up to negating all inputs and/or the
/// output: `(name, exact)` where `exact` means no negation was needed.
fn family_name(p: &SymmetricProfile) -> Option<(String, bool)> {
    let n = p.arity();
    if n == 0 {
        return None;
    }
    let mut named = vec![
        (format!("AND_{n}"), families::and(n)),
        (format!("OR_{n}"), families::or(n)),
        (format!("PARITY_{n}"), families::parity(n)),
    ];
    if n >= 2 {
        named.push((format!("NAE_{n}"), families::nae(n)));
    }
    named.extend((1..n).map(|k| (format!("EXACT_{n}^{k}"), families::exact(n, k))));
    named.extend((2..n).map(|k| (format!("Th_{n}^{k}"), families::threshold(n, k))));
    let profiles: Vec<(String, SymmetricProfile)> = named
        .into_iter()
        .map(|(name, t)| (name, symmetric_profile(&t).expect("symmetric family")))
        .collect();
    if let Some((name, _)) = profiles.iter().find(|(_, q)| q == p) {
        return Some((name.clone(), true));
    }
    profiles
        .iter()
        .find(|(_, q)| {
            let r = q.reverse();
            [q.negate(), r.negate(), r].contains(p)
        })
        .map(|(name, _)| (name.clone(), false))
}

pub fn analyze(f: &TruthTable) -> Value {
    let n = f.arity();
    let profile = symmetric_profile(f);
    let class = profile.as_ref().and_then(family_name).map(|(name, exact)| {
        if exact {
            name
        } else {
            format!("isomorphic to {name}")
        }
    });
    let read_once = if n <= MAX_READ_ONCE_ARITY {
        match recognize_read_once(f) {
            Ok(Some(formula)) => json!(formula.to_string()),
            Ok(None) => json!(false),
            Err(e) => json!(e.to_string()),
        }
    } else {
        Value::Null
    };
    let depth = (n <= MAX_DEPTH_ARITY).then(|| decision_tree_depth(f).ok()).flatten();
    let npn = (n <= MAX_NPN_ARITY)
        .then(|| npn_canonical(f).ok())
        .flatten()
        .map(|(c, _)| c.to_string());
    json!({
        "schema": ANALYZE_SCHEMA,
        "function": f.to_string(),
        "arity": n,
        "popcount": f.count_ones(),
        "symmetric_profile": profile.as_ref().map(|p| p.to_string()),
        "symmetric_class": class,
        "monotone": is_monotone(f),
        "read_once": read_once,
        "degree": degree(f).ok(),
        "decision_tree_depth": depth,
        "npn_canonical": npn,
        "and_isomorphic": is_and_isomorphic(f),
    })
}

pub fn render_human(v: &Value) -> String {
    let mut out = String::new();
    let show = |v: &Value| match v {
        Value::Null => "n/a".to_string(),
        Value::String(s) => s.clone(),
        Value::Bool(false) => "no".to_string(),
        Value::Bool(true) => "yes".to_string(),
        other => other.to_string(),
    };
    let rows = [
        ("function", "function"),
        ("arity", "arity"),
        ("popcount", "popcount"),
        ("symmetric profile", "symmetric_profile"),
        ("symmetric class", "symmetric_class"),
        ("monotone", "monotone"),
        ("read-once", "read_once"),
        ("degree", "degree"),
        ("D(f)", "decision_tree_depth"),
        ("NPN canonical", "npn_canonical"),
        ("AND-isomorphic", "and_isomorphic"),
    ];
    for (label, key) in rows {
        let _ = writeln!(out, "{label:<18} {}", show(&v[key]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactq::boolfun::parse_function;

    #[test]
    fn parity_profile_named() {
        let v = analyze(&parse_function("profile:0,1,0,1").unwrap());
        assert_eq!(v["symmetric_class"], "PARITY_3");
        assert_eq!(v["degree"], 3);
        assert_eq!(v["decision_tree_depth"], 3);
    }

    #[test]
    fn negated_family_is_isomorphic() {
        let v = analyze(&parse_function("profile:1,0,0,1").unwrap());
        assert_eq!(v["symmetric_class"], "isomorphic to NAE_3");
    }
}
