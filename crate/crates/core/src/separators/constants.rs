//! Ramsey numbers by exhaustive search, and the constants built from them.
//!
//! Every number carries a tag saying whether it was computed exactly, is only
//! an upper bound, or depends on a quantity nobody knows (`μ`, `β`, `f`).

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Exact(BigUint),
    /// An upper bound on the true value.
    Bound(BigUint),
    Symbolic(String),
}

impl Quantity {
    pub fn exact(v: u64) -> Self {
        Quantity::Exact(BigUint::from(v))
    }

    pub fn value(&self) -> Option<&BigUint> {
        match self {
            Quantity::Exact(v) | Quantity::Bound(v) => Some(v),
            Quantity::Symbolic(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Quantity::Exact(_))
    }

    /// `Some(true)` when `x` is strictly below the value; `None` when the
    /// value is symbolic.
    pub fn exceeds(&self, x: usize) -> Option<bool> {
        self.value().map(|v| BigUint::from(x) < *v)
    }

    fn expr(&self) -> String {
        match self {
            Quantity::Exact(v) | Quantity::Bound(v) => v.to_string(),
            Quantity::Symbolic(s) => s.clone(),
        }
    }

    /// Combines two quantities by a monotone operation: exact stays exact,
    /// a bound anywhere gives a bound, a symbol anywhere gives a symbol.
    fn combine(
        &self,
        other: &Quantity,
        num: impl Fn(&BigUint, &BigUint) -> BigUint,
        sym: impl Fn(&str, &str) -> String,
    ) -> Quantity {
        match (self, other) {
            (Quantity::Exact(a), Quantity::Exact(b)) => Quantity::Exact(num(a, b)),
            (Quantity::Symbolic(_), _) | (_, Quantity::Symbolic(_)) => {
                Quantity::Symbolic(sym(&self.expr(), &other.expr()))
            }
            _ => Quantity::Bound(num(self.value().unwrap(), other.value().unwrap())),
        }
    }

    pub fn add(&self, other: &Quantity) -> Quantity {
        self.combine(other, |a, b| a + b, |a, b| format!("({a} + {b})"))
    }

    pub fn mul(&self, other: &Quantity) -> Quantity {
        self.combine(other, |a, b| a * b, |a, b| format!("{a}·{b}"))
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(v) => write!(f, "{v}"),
            Quantity::Bound(v) => write!(f, "≤ {v}"),
            Quantity::Symbolic(s) => write!(f, "{s}"),
        }
    }
}

// Values that fit travel as JSON numbers, larger ones as decimal strings.
impl Serialize for Quantity {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Quantity", 2)?;
        match self {
            Quantity::Exact(v) | Quantity::Bound(v) => {
                st.serialize_field("kind", if self.is_exact() { "exact" } else { "bound" })?;
                match v.to_u64() {
                    Some(x) => st.serialize_field("value", &x)?,
                    None => st.serialize_field("value", &v.to_string())?,
                }
            }
            Quantity::Symbolic(s) => {
                st.serialize_field("kind", "symbolic")?;
                st.serialize_field("symbolic", s)?;
            }
        }
        st.end()
    }
}

/// Node budget for the exhaustive searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The classical bound `R(a, b) ≤ C(a + b − 2, a − 1)`.
pub fn ramsey_binomial_bound(a: usize, b: usize) -> BigUint {
    if a == 0 || b == 0 {
        return BigUint::one();
    }
    binomial((a + b - 2) as u64, (a - 1) as u64)
}

/// Adjacency rows as bitmasks; graphs searched here stay below 64 vertices.
fn has_clique(adj: &[u64], cand: u64, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < size {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(adj, rest & adj[v], size - 1) {
            return true;
        }
    }
    false
}

struct Search {
    budget: u64,
    spent: u64,
    best: usize,
}

impl Search {
    /// Extends a graph with no `K_a` and no stable `b`-set by one vertex in
    /// every possible way. Returns `false` when the budget runs out.
    fn ramsey(&mut self, adj: &mut Vec<u64>, a: usize, b: usize, limit: usize) -> bool {
        let k = adj.len();
        self.best = self.best.max(k);
        if k + 1 >= limit {
            return true;
        }
        let all = (1u64 << k) - 1;
        let comp: Vec<u64> = adj.iter().enumerate().map(|(i, r)| !r & all & !(1 << i)).collect();
        for nb in 0..=all {
            self.spent += 1;
            if self.spent > self.budget {
                return false;
            }
            if has_clique(adj, nb, a - 1) || has_clique(&comp, all & !nb, b - 1) {
                continue;
            }
            for (i, row) in adj.iter_mut().enumerate() {
                if nb >> i & 1 == 1 {
                    *row |= 1 << k;
                }
            }
            adj.push(nb);
            let ok = self.ramsey(adj, a, b, limit);
            adj.pop();
            for row in adj.iter_mut() {
                *row &= !(1 << k);
            }
            if !ok {
                return false;
            }
        }
        true
    }
}

/// `R(a, b)`, the least `n` such that every graph on `n` vertices has a
/// clique of size `a` or a stable set of size `b`. Computed exactly by
/// growing every graph with neither, one vertex at a time; when the search
/// exceeds `budget` nodes the binomial bound is returned instead.
pub fn ramsey_with_budget(a: usize, b: usize, budget: u64) -> Quantity {
    if a == 0 || b == 0 {
        return Quantity::Exact(BigUint::one());
    }
    let bound = ramsey_binomial_bound(a, b);
    let limit = match bound.to_usize() {
        Some(l) if l <= 63 => l,
        _ => return Quantity::Bound(bound),
    };
    let mut search = Search { budget, spent: 0, best: 0 };
    if search.ramsey(&mut Vec::new(), a, b, limit) {
        Quantity::Exact(BigUint::from(search.best + 1))
    } else {
        Quantity::Bound(bound)
    }
}

pub fn ramsey(a: usize, b: usize) -> Quantity {
    ramsey_with_budget(a, b, DEFAULT_SEARCH_BUDGET)
}

/// Arcs as bitmasks: bit `j` of `out[i]` means `i → j`.
fn has_transitive(out: &[u64], cand: u64, size: usize) -> bool {
    // A transitive tournament has a source; pick it, recurse on its
    // out-neighbours.
    if size == 0 {
        return true;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_transitive(out, cand & out[v], size - 1) {
            return true;
        }
    }
    false
}

impl Search {
    fn tournament(&mut self, out: &mut Vec<u64>, p: usize, limit: usize) -> bool {
        let k = out.len();
        self.best = self.best.max(k);
        if k + 1 >= limit {
            return true;
        }
        let all = (1u64 << k) - 1;
        for nb in 0..=all {
            self.spent += 1;
            if self.spent > self.budget {
                return false;
            }
            for (i, row) in out.iter_mut().enumerate() {
                if nb >> i & 1 == 0 {
                    *row |= 1 << k;
                }
            }
            out.push(nb);
            let full = (1u64 << (k + 1)) - 1;
            let ok = if has_transitive(out, full, p) {
                true
            } else {
                self.tournament(out, p, limit)
            };
            out.pop();
            for row in out.iter_mut() {
                *row &= !(1 << k);
            }
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Which argument certified `R_tourn(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TournamentBound {
    Exhaustive,
    /// `2^{p−1}`, by repeatedly taking a vertex of large out-degree.
    PowerOfTwo,
    /// `R(p, p)`.
    Ramsey,
}

/// `R_tourn(p)`: the least `n` such that every tournament on `n` vertices
/// contains a transitive tournament on `p` vertices.
pub fn tournament_ramsey_with_budget(p: usize, budget: u64) -> (Quantity, TournamentBound) {
    if p <= 1 {
        return (Quantity::Exact(BigUint::from(p as u64)), TournamentBound::Exhaustive);
    }
    let pow = BigUint::one() << (p - 1);
    let rpp = ramsey_binomial_bound(p, p);
    let (bound, which) = if rpp < pow {
        (rpp, TournamentBound::Ramsey)
    } else {
        (pow, TournamentBound::PowerOfTwo)
    };
    if let Some(limit) = bound.to_usize().filter(|&l| l <= 63) {
        let mut search = Search { budget, spent: 0, best: 0 };
        if search.tournament(&mut Vec::new(), p, limit + 1) {
            return (
                Quantity::Exact(BigUint::from(search.best as u64 + 1)),
                TournamentBound::Exhaustive,
            );
        }
    }
    (Quantity::Bound(bound), which)
}

pub fn tournament_ramsey(p: usize) -> (Quantity, TournamentBound) {
    tournament_ramsey_with_budget(p, DEFAULT_SEARCH_BUDGET)
}

/// The parameters and every constant derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constants {
    pub t: usize,
    pub delta: usize,
    pub nu: usize,
    pub d: usize,
    pub r: usize,
    /// `R(t, 3)`.
    pub ramsey_t3: Quantity,
    /// `j(t, δ) = C(δ, 2)·R(t, 3)`.
    pub j: Quantity,
    /// `σ(t, δ) = 2δ(j(t, δ) + t)`.
    pub sigma: Quantity,
    /// `s(t) = σ(t, 3)`.
    pub s: Quantity,
    /// `R_tourn(ν + 1)`.
    pub r_tourn: Quantity,
    pub r_tourn_bound: TournamentBound,
    /// `μ(max{2s + 1, t})`.
    pub mu: Quantity,
    /// `γ = R(R_tourn(ν + 1), μ)`.
    pub gamma: Quantity,
    /// `ψ(t, ν) = R(γ, t)`.
    pub psi: Quantity,
    /// `m_r` for the given `d`: `m_1 = d`, `m_r = ψ(t, (m_{r−1} + 1)d)`.
    pub m_r: Quantity,
    /// `τ = β(max{m, t + 1}, t)` with `m = m(f, f, t)` and `f = f(d, r, 3, t)`.
    pub tau: Quantity,
}

/// `j(t, δ)`.
pub fn jewel_bound(t: usize, delta: usize) -> Quantity {
    let pairs = Quantity::Exact(binomial(delta as u64, 2));
    pairs.mul(&ramsey(t, 3))
}

/// `σ(t, δ)`.
pub fn sigma_bound(t: usize, delta: usize) -> Quantity {
    let two_delta = Quantity::exact(2 * delta as u64);
    two_delta.mul(&jewel_bound(t, delta).add(&Quantity::exact(t as u64)))
}

pub fn constants(t: usize, delta: usize, nu: usize, d: usize, r: usize) -> Constants {
    let ramsey_t3 = ramsey(t, 3);
    let j = jewel_bound(t, delta);
    let sigma = sigma_bound(t, delta);
    let s = sigma_bound(t, 3);
    let (r_tourn, r_tourn_bound) = tournament_ramsey(nu + 1);
    let mu_arg = match s.value() {
        Some(v) => {
            let twice = v * 2u32 + 1u32;
            let m = twice.max(BigUint::from(t));
            m.to_string()
        }
        None => format!("max{{2s + 1, {t}}}"),
    };
    let mu = Quantity::Symbolic(format!("μ({mu_arg})"));
    let gamma = Quantity::Symbolic(format!("R({}, {})", r_tourn.expr(), mu.expr()));
    let psi = Quantity::Symbolic(format!("R({}, {t})", gamma.expr()));
    let mut m_r = Quantity::exact(d as u64);
    for _ in 1..r.max(1) {
        let arg = m_r.add(&Quantity::exact(1)).mul(&Quantity::exact(d as u64));
        m_r = Quantity::Symbolic(format!("ψ({t}, {})", arg.expr()));
    }
    let tau = Quantity::Symbolic(format!(
        "β(max{{m(f, f, {t}), {}}}, {t}) with f = f({d}, {r}, 3, {t})",
        t + 1
    ));
    Constants {
        t,
        delta,
        nu,
        d,
        r,
        ramsey_t3,
        j,
        sigma,
        s,
        r_tourn,
        r_tourn_bound,
        mu,
        gamma,
        psi,
        m_r,
        tau,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(q: &Quantity) -> u64 {
        match q {
            Quantity::Exact(v) => v.to_u64().unwrap(),
            other => panic!("expected an exact value, got {other}"),
        }
    }

    #[test]
    fn small_ramsey_numbers() {
        assert_eq!(exact(&ramsey(3, 3)), 6);
        assert_eq!(exact(&ramsey(2, 5)), 5);
        assert_eq!(exact(&ramsey(5, 2)), 5);
        assert_eq!(exact(&ramsey(1, 7)), 1);
        assert_eq!(exact(&ramsey(3, 2)), 3);
    }

    #[test]
    fn exhausted_budget_falls_back_to_the_binomial_bound() {
        assert_eq!(ramsey_with_budget(3, 3, 10), Quantity::Bound(BigUint::from(6u32)));
        assert_eq!(ramsey_binomial_bound(4, 4), BigUint::from(20u32));
    }

    #[test]
    fn brute_force_agrees_on_r33() {
        // Every 2-colouring of K_6 has a monochromatic triangle; C_5 shows 5
        // vertices do not suffice.
        let pairs: Vec<(usize, usize)> =
            (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
        let mono = |n: usize, mask: u32| {
            let col = |i: usize, j: usize| {
                let k = pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
                mask >> k & 1
            };
            (0..n).any(|a| {
                (a + 1..n).any(|b| {
                    (b + 1..n).any(|c| col(a, b) == col(b, c) && col(b, c) == col(a, c))
                })
            })
        };
        assert!((0..1u32 << 15).all(|m| mono(6, m)));
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        let mask = pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| c5.contains(p))
            .fold(0u32, |m, (k, _)| m | 1 << k);
        assert!(!mono(5, mask));
    }

    #[test]
    fn tournament_numbers() {
        assert_eq!(tournament_ramsey(2).0, Quantity::exact(2));
        assert_eq!(tournament_ramsey(3), (Quantity::exact(4), TournamentBound::Exhaustive));
        assert_eq!(tournament_ramsey(4), (Quantity::exact(8), TournamentBound::Exhaustive));
    }

    #[test]
    fn derived_constants() {
        let c = constants(3, 3, 2, 2, 2);
        assert_eq!(exact(&c.j), 18);
        assert_eq!(exact(&c.sigma), 126);
        assert_eq!(exact(&c.s), 126);
        assert_eq!(exact(&c.r_tourn), 4);
        for q in [&c.mu, &c.gamma, &c.psi, &c.m_r, &c.tau] {
            assert!(matches!(q, Quantity::Symbolic(_)), "{q}");
        }
        assert!(c.psi.to_string().contains("μ(253)"), "{}", c.psi);
        assert_eq!(constants(3, 3, 2, 4, 1).m_r, Quantity::exact(4));
        assert_eq!(exact(&jewel_bound(3, 4)), 36);
    }

    #[test]
    fn quantities_serialize_with_their_tag() {
        let j = serde_json::to_value(Quantity::exact(18)).unwrap();
        assert_eq!(j, serde_json::json!({"kind": "exact", "value": 18}));
        let b = serde_json::to_value(Quantity::Bound(BigUint::from(10u32))).unwrap();
        assert_eq!(b["kind"], "bound");
        let s = serde_json::to_value(Quantity::Symbolic("μ(7)".into())).unwrap();
        assert_eq!(s["symbolic"], "μ(7)");
    }
}
