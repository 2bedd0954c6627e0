// SPDX-License-Identifier: Apache-2.0

//! Compiles truth tables into certified exact query programs.
//!
//! Every sub-function is first reduced to its live variables, then priced by
//! rules R0-R6 (see [`Rule`]); the cheapest rule wins, ties going to the
//! earlier one. Costs are memoized per reduced table, so a [`Synthesizer`]
//! reused across calls returns the same certificate for the same input.

mod certificate;
mod verify;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;

use crate::boolfun::{is_and_isomorphic, npn_canonical, symmetric_profile, families, SymmetricProfile, TruthTable};
use crate::qprogram::{eq_nand_on, parity_on, AxiomClass, QueryProgram};

pub use certificate::{Certificate, Level, Rule, RuleUse, CERTIFICATE_SCHEMA};
pub use verify::{verify_certificate, AxiomAudit, VerifyError, VerifyReport};

/// Largest arity for which the `n - 1` bound is asserted.
pub const GUARANTEE_ARITY: usize = 5;
/// Largest arity at which R6 also tries `x_i XOR x_j` observables.
pub const XOR_SPLIT_ARITY: usize = 5;
/// Largest arity at which R6 tries every single variable; above it, only
/// `x1` for symmetric functions.
pub const FULL_SPLIT_ARITY: usize = 8;
/// Largest arity searched for disjoint decompositions.
pub const DECOMPOSE_ARITY: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Observable {
    Var(usize),
    Xor(usize, usize),
}

/// Rule applied to a reduced table. Positions are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Const(bool),
    Literal { negated: bool },
    AndChain { point: usize, value: bool },
    Parity { negated: bool },
    Nae { negated: bool, mask: usize },
    Named(AxiomClass),
    Base(AxiomClass),
    /// Role `r` of `eq_nand3` is position `roles[r]`, negated per `neg`.
    EqNand { roles: [usize; 3], neg: [bool; 3], negated: bool },
    Decompose { and: bool, first: usize },
    Split(Observable),
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    cost: u32,
    choice: Choice,
    has_axiom: bool,
}

/// Memoizing synthesizer. Results depend only on the input table.
#[derive(Default)]
pub struct Synthesizer {
    memo: FxHashMap<TruthTable, Entry>,
}

fn and_or3_canonical() -> &'static TruthTable {
    static CANON: OnceLock<TruthTable> = OnceLock::new();
    CANON.get_or_init(|| npn_canonical(&families::and_or3()).expect("3-bit").0)
}

fn eq_nand_canonical() -> &'static TruthTable {
    static CANON: OnceLock<TruthTable> = OnceLock::new();
    CANON.get_or_init(|| npn_canonical(&families::eq_nand3()).expect("3-bit").0)
}

/// Roles, negations and output flip presenting the 3-bit `g` as `eq_nand3`.
fn eq_nand_roles(g: &TruthTable) -> Option<Choice> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let base = families::eq_nand3();
    for roles in PERMS {
        for mask in 0..8usize {
            let neg = [mask & 1 == 1, mask & 2 == 2, mask & 4 == 4];
            for negated in [false, true] {
                let hit = (0..8).all(|y| {
                    let x = (0..3).fold(0, |x, r| x | ((y >> roles[r] & 1) ^ neg[r] as usize) << r);
                    g.get(y) == base.get(x) ^ negated
                });
                if hit {
                    return Some(Choice::EqNand { roles, neg, negated });
                }
            }
        }
    }
    None
}

/// Bits of `x` at the positions in `mask`, packed into the low bits.
fn gather(x: usize, mask: usize) -> usize {
    let (mut out, mut k) = (0, 0);
    let mut m = mask;
    while m != 0 {
        let p = m.trailing_zeros();
        out |= (x >> p & 1) << k;
        k += 1;
        m &= m - 1;
    }
    out
}

/// Existentially projects `g` onto the positions in `keep`.
fn project(g: &TruthTable, keep: usize) -> TruthTable {
    let mut t = g.clone();
    for p in (0..g.arity()).rev() {
        if keep >> p & 1 == 0 {
            t = t.restrict_pos(p, false).or(&t.restrict_pos(p, true)).expect("same arity");
        }
    }
    t
}

/// Finds `g = A(x_S) & B(x_T)` (or `|` when `and` is false) over a nontrivial
/// bipartition; returns the mask of `S`, which always contains `x1`.
fn disjoint_split(g: &TruthTable, and: bool) -> Option<(usize, TruthTable, TruthTable)> {
    let n = g.arity();
    let full = (1usize << n) - 1;
    // g = A | B  iff  ~g = ~A & ~B
    let h = if and { g.clone() } else { g.not() };
    for s in (1..full).step_by(2) {
        let t = full & !s;
        let a = project(&h, s);
        let b = project(&h, t);
        if (0..h.len()).all(|x| h.get(x) == (a.get(gather(x, s)) && b.get(gather(x, t)))) {
            return Some(if and { (s, a, b) } else { (s, a.not(), b.not()) });
        }
    }
    None
}

/// Named symmetric class matching `p` up to output and input negation.
fn named_class(p: &SymmetricProfile) -> Option<AxiomClass> {
    let n = p.arity();
    let classes: Vec<AxiomClass> = (1..n)
        .map(|k| AxiomClass::Exact { n, k })
        .chain((2..n).map(|k| AxiomClass::Threshold { n, k }))
        .collect();
    // prefer the class the profile literally is, then its variants
    [p.clone(), p.negate(), p.reverse(), p.negate().reverse()]
        .iter()
        .find_map(|v| {
            classes
                .iter()
                .copied()
                .find(|c| symmetric_profile(&c.table()).as_ref() == Some(v))
        })
}

/// Largest arity at which symmetry up to input negation is searched.
pub const NEGATION_SEARCH_ARITY: usize = 6;

/// An input-negation mask `a` with `g(x XOR a)` symmetric, smallest first.
fn symmetric_up_to_negation(g: &TruthTable) -> Option<(usize, SymmetricProfile)> {
    if let Some(p) = symmetric_profile(g) {
        return Some((0, p));
    }
    if g.arity() > NEGATION_SEARCH_ARITY {
        return None;
    }
    (1..g.len()).find_map(|a| symmetric_profile(&TruthTable::from_fn(g.arity(), |x| g.get(x ^ a))).map(|p| (a, p)))
}

/// NAE of `x XOR mask` on `map`: gadget branches swap where the pair's
/// negations differ.
fn nae_masked(map: &[usize], mask: usize, negated: bool) -> QueryProgram {
    let mut p = QueryProgram::output(negated);
    for k in (0..map.len() - 1).rev() {
        let differ = QueryProgram::output(!negated);
        let (zero, one) = if (mask >> k ^ mask >> (k + 1)) & 1 == 1 { (differ, p) } else { (p, differ) };
        p = QueryProgram::xq(map[k], map[k + 1], zero, one).expect("distinct");
    }
    p
}

fn drop_index(map: &[usize], p: usize) -> Vec<usize> {
    let mut m = map.to_vec();
    m.remove(p);
    m
}

impl Synthesizer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized sub-functions.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Synthesized cost of `f` without building a program.
    pub fn cost(&mut self, f: &TruthTable) -> u32 {
        self.solve(&f.reduce().0).cost
    }

    fn solve(&mut self, g: &TruthTable) -> Entry {
        if let Some(v) = g.constant_value() {
            return Entry {
                cost: 0,
                choice: Choice::Const(v),
                has_axiom: false,
            };
        }
        if let Some(e) = self.memo.get(g) {
            return *e;
        }
        let e = self.price(g);
        self.memo.insert(g.clone(), e);
        e
    }

    fn price(&mut self, g: &TruthTable) -> Entry {
        let n = g.arity();
        let plain = |cost: usize, choice| Entry {
            cost: cost as u32,
            choice,
            has_axiom: false,
        };
        let axiom = |class: AxiomClass, choice| Entry {
            cost: class.queries(),
            choice,
            has_axiom: true,
        };
        if n == 1 {
            return plain(1, Choice::Literal { negated: g.get(0) });
        }
        if is_and_isomorphic(g) {
            let value = g.count_ones() == 1;
            let point = (0..g.len()).find(|&x| g.get(x) == value).expect("odd point");
            return plain(n, Choice::AndChain { point, value });
        }
        let sym = symmetric_up_to_negation(g);
        let mut best: Option<Entry> = None;
        if let Some((mask, p)) = &sym {
            let bits = p.bits();
            if (0..=n).all(|w| bits[w] == (bits[0] ^ (w % 2 == 1))) {
                let negated = bits[0] ^ (mask.count_ones() % 2 == 1);
                return plain(n.div_ceil(2), Choice::Parity { negated });
            }
            if let Some(c) = named_class(p) {
                return axiom(c, Choice::Named(c));
            }
            if bits[0] == bits[n] && (1..n).all(|w| bits[w] != bits[0]) {
                best = Some(plain(n - 1, Choice::Nae { negated: bits[0], mask: *mask }));
            }
        }
        if n == 3 {
            let canon = npn_canonical(g).expect("3-bit").0;
            if canon == *and_or3_canonical() {
                return axiom(AxiomClass::AndOr3, Choice::Base(AxiomClass::AndOr3));
            }
            if canon == *eq_nand_canonical() {
                return plain(2, eq_nand_roles(g).expect("same class"));
            }
        }
        if sym.is_none() && (4..=DECOMPOSE_ARITY).contains(&n) {
            if let Some(e) = self.decompose(g) {
                best = Some(e);
            }
        }
        self.split(g, sym.is_some_and(|(mask, _)| mask == 0), best)
    }

    fn decompose(&mut self, g: &TruthTable) -> Option<Entry> {
        for and in [true, false] {
            let Some((s, a, b)) = disjoint_split(g, and) else { continue };
            let (ea, eb) = (self.solve(&a.reduce().0), self.solve(&b.reduce().0));
            let first = match (ea.has_axiom, eb.has_axiom) {
                (false, _) => s,
                (true, false) => !s & ((1 << g.arity()) - 1),
                (true, true) => continue,
            };
            return Some(Entry {
                cost: ea.cost + eb.cost,
                choice: Choice::Decompose { and, first },
                has_axiom: ea.has_axiom || eb.has_axiom,
            });
        }
        None
    }

    fn observables(n: usize, symmetric: bool) -> Vec<Observable> {
        let mut obs = Vec::new();
        if n <= XOR_SPLIT_ARITY {
            for i in 0..n {
                obs.extend((i + 1..n).map(|j| Observable::Xor(i, j)));
            }
        }
        if n <= FULL_SPLIT_ARITY || !symmetric {
            obs.extend((0..n).map(Observable::Var));
        } else {
            obs.push(Observable::Var(0));
        }
        obs
    }

    fn children(g: &TruthTable, o: Observable) -> [TruthTable; 2] {
        [false, true].map(|b| match o {
            Observable::Var(p) => g.restrict_pos(p, b),
            Observable::Xor(i, j) => g.xor_collapse_pos(i, j, b),
        })
    }

    /// R6: branch and bound over observables, starting from `best`.
    fn split(&mut self, g: &TruthTable, symmetric: bool, mut best: Option<Entry>) -> Entry {
        for o in Self::observables(g.arity(), symmetric) {
            let bound = best.map_or(u32::MAX, |e| e.cost);
            if bound <= 1 {
                break;
            }
            let [c0, c1] = Self::children(g, o);
            let e0 = self.solve(&c0.reduce().0);
            if e0.cost + 1 >= bound {
                continue;
            }
            let e1 = self.solve(&c1.reduce().0);
            let cost = 1 + e0.cost.max(e1.cost);
            if cost < bound {
                best = Some(Entry {
                    cost,
                    choice: Choice::Split(o),
                    has_axiom: e0.has_axiom || e1.has_axiom,
                });
            }
        }
        best.expect("single-variable splits always apply")
    }

    /// Program for `g` (reduced) whose variable `k` is program variable `map[k]`.
    fn build(&mut self, g: &TruthTable, map: &[usize], rules: &mut BTreeSet<Rule>) -> QueryProgram {
        let e = self.solve(g);
        match e.choice {
            Choice::Const(v) => {
                rules.insert(Rule::R0);
                QueryProgram::output(v)
            }
            Choice::Literal { negated } => {
                rules.insert(Rule::R1);
                QueryProgram::cq(map[0], QueryProgram::output(negated), QueryProgram::output(!negated))
            }
            Choice::AndChain { point, value } => {
                rules.insert(Rule::R2);
                let mut p = QueryProgram::output(value);
                for pos in (0..g.arity()).rev() {
                    let miss = QueryProgram::output(!value);
                    p = if point >> pos & 1 == 1 {
                        QueryProgram::cq(map[pos], miss, p)
                    } else {
                        QueryProgram::cq(map[pos], p, miss)
                    };
                }
                p
            }
            Choice::Parity { negated } => {
                rules.insert(Rule::R3);
                parity_on(map, negated)
            }
            Choice::Nae { negated, mask } => {
                rules.insert(Rule::R3);
                nae_masked(map, mask, negated)
            }
            Choice::Named(c) => {
                rules.insert(Rule::R3);
                QueryProgram::axiom(c, map.to_vec())
            }
            Choice::Base(c) => {
                rules.insert(Rule::R4);
                QueryProgram::axiom(c, map.to_vec())
            }
            Choice::EqNand { roles, neg, negated } => {
                rules.insert(Rule::R4);
                eq_nand_on(roles.map(|p| map[p]), neg, negated)
            }
            Choice::Decompose { and, first } => {
                rules.insert(Rule::R5);
                let second = !first & ((1 << g.arity()) - 1);
                let h = if and { g.clone() } else { g.not() };
                let part = |mask: usize| {
                    let t = project(&h, mask);
                    let t = if and { t } else { t.not() };
                    let m: Vec<usize> = (0..g.arity()).filter(|p| mask >> p & 1 == 1).map(|p| map[p]).collect();
                    (t, m)
                };
                let (ta, ma) = part(first);
                let (tb, mb) = part(second);
                let pa = self.build_any(&ta, &ma, rules);
                let pb = self.build_any(&tb, &mb, rules);
                // AND continues on 1, OR on 0
                pa.map_outputs(&mut |v| if v == and { pb.clone() } else { QueryProgram::output(v) })
            }
            Choice::Split(o) => {
                rules.insert(Rule::R6);
                let [c0, c1] = Self::children(g, o);
                let (vars, rest) = match o {
                    Observable::Var(p) => ([map[p], 0], drop_index(map, p)),
                    Observable::Xor(i, j) => ([map[i], map[j]], drop_index(map, j)),
                };
                let zero = self.build_any(&c0, &rest, rules);
                let one = self.build_any(&c1, &rest, rules);
                match o {
                    Observable::Var(_) => QueryProgram::cq(vars[0], zero, one),
                    Observable::Xor(..) => QueryProgram::xq(vars[0], vars[1], zero, one).expect("distinct"),
                }
            }
        }
    }

    /// Like `build` for a table that may still have dead variables.
    fn build_any(&mut self, t: &TruthTable, map: &[usize], rules: &mut BTreeSet<Rule>) -> QueryProgram {
        let (g, live) = t.reduce();
        if live.len() < t.arity() && !g.is_constant() {
            rules.insert(Rule::R1);
        }
        let m: Vec<usize> = live.iter().map(|&v| map[v - 1]).collect();
        self.build(&g, &m, rules)
    }

    /// Compiles `f` into a certificate. Total for every arity; the `n - 1`
    /// bound is asserted only up to [`GUARANTEE_ARITY`].
    pub fn certificate(&mut self, f: &TruthTable) -> Certificate {
        let n = f.arity();
        let mut rules = BTreeSet::new();
        let map: Vec<usize> = (1..=n).collect();
        let program = self.build_any(f, &map, &mut rules);
        let claimed = program.query_cost();
        Certificate {
            schema: CERTIFICATE_SCHEMA.to_string(),
            function: f.clone(),
            claimed_queries: claimed,
            level: Level::of(&program),
            rules_used: rules
                .into_iter()
                .map(|id| RuleUse {
                    id,
                    citation: id.citation().to_string(),
                })
                .collect(),
            optimal: is_and_isomorphic(f) && claimed as usize == n,
            guarantee_asserted: (1..=GUARANTEE_ARITY).contains(&n),
            program,
        }
    }
}

/// One-shot [`Synthesizer::certificate`].
pub fn synthesize(f: &TruthTable) -> Certificate {
    Synthesizer::new().certificate(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::{degree, parse_function};
    use crate::qprogram::simulate;

    #[test]
    fn gather_bits() {
        assert_eq!(gather(0b1011, 0b1010), 0b11);
        assert_eq!(gather(0b1011, 0b0100), 0);
    }

    #[test]
    fn decomposition_found() {
        let f = parse_function("formula:(x1|x3)&(x2|x4)").unwrap();
        let (s, a, b) = disjoint_split(&f, true).unwrap();
        assert_eq!(s, 0b0101);
        assert_eq!(a, families::or(2));
        assert_eq!(b, families::or(2));
        assert!(disjoint_split(&families::parity(4), true).is_none());
        let g = parse_function("formula:x1&x2|x3&x4").unwrap();
        assert!(disjoint_split(&g, false).is_some());
    }

    #[test]
    fn named_examples() {
        let c = synthesize(&families::and(4));
        assert_eq!((c.claimed_queries, c.optimal), (4, true));
        let c = synthesize(&families::parity(4));
        assert_eq!((c.claimed_queries, c.level), (2, Level::FullySimulated));
        let c = synthesize(&families::nae(4));
        assert!(c.claimed_queries <= 3);
        assert_eq!(c.level, Level::FullySimulated);
        let c = synthesize(&parse_function("profile:0,0,1,0").unwrap());
        assert_eq!((c.claimed_queries, c.level), (2, Level::CountCertified));
        let c = synthesize(&families::and_or3());
        assert_eq!(c.claimed_queries, 2);
        assert_eq!(c.rules_used[0].id, Rule::R4);
    }

    #[test]
    fn three_bit_functions_use_two_queries() {
        let mut s = Synthesizer::new();
        for code in 0..256u64 {
            let f = TruthTable::from_u64(3, code);
            let c = s.certificate(&f);
            if is_and_isomorphic(&f) {
                assert_eq!(c.claimed_queries, 3);
            } else {
                assert!(c.claimed_queries <= 2, "{f}");
            }
            assert!(2 * c.claimed_queries as usize >= degree(&f).unwrap());
            if c.level != Level::CountCertified {
                assert!(simulate(&c.program, &f).unwrap().exact, "{f}");
            }
        }
    }

    #[test]
    fn dead_variables_are_dropped() {
        let f = TruthTable::var(5, 3).unwrap();
        let c = synthesize(&f);
        assert_eq!(c.claimed_queries, 1);
        assert!(c.rules_used.iter().any(|r| r.id == Rule::R1));
        assert!(simulate(&c.program, &f).unwrap().exact);
    }

    #[test]
    fn large_symmetric_best_effort() {
        let f = parse_function("profile:0,1,1,0,0,1,1,0,0,1,1").unwrap();
        let c = synthesize(&f);
        assert!(!c.guarantee_asserted);
        assert!(c.claimed_queries <= 9);
    }
}
