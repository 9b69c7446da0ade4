//! Tower and log* arithmetic, the bound recurrences used throughout, and
//! brute-force succinctness tables at desk scale.

use crate::efgame::bounded_definability_rank;
use crate::error::{Error, Result};
use crate::graph::enumerate_graphs;
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

/// A non-negative integer that may exceed any printable size: either exact
/// or a symbolic power `2^x` (nested as needed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Exact(BigUint),
    /// `2^inner`, kept symbolic because the exponent is too large to expand
    /// within the digit cap.
    Exp2(Box<Bound>),
    /// `4^inner`.
    Exp4(Box<Bound>),
    /// `a * b`, kept symbolic.
    Mul(Box<Bound>, Box<Bound>),
    /// `a + b`, kept symbolic.
    Add(Box<Bound>, Box<Bound>),
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(x) => write!(f, "{x}"),
            Bound::Exp2(x) => write!(f, "2^({x})"),
            Bound::Exp4(x) => write!(f, "4^({x})"),
            Bound::Mul(a, b) => write!(f, "({a})*({b})"),
            Bound::Add(a, b) => write!(f, "({a})+({b})"),
        }
    }
}

impl Bound {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Bound::Exact(x) => Some(x),
            _ => None,
        }
    }

    pub fn from_u64(x: u64) -> Bound {
        Bound::Exact(BigUint::from(x))
    }

    fn exp_base(self, base: u32, digit_cap: usize) -> Bound {
        debug_assert!(base == 2 || base == 4);
        let shift_per_unit = if base == 2 { 1u64 } else { 2 };
        if let Bound::Exact(x) = &self {
            // 2^x has about x * 0.302 decimal digits
            if let Ok(exp) = u64::try_from(x) {
                let digits_estimate = exp.saturating_mul(302 * shift_per_unit) / 1000;
                if digits_estimate < digit_cap as u64 {
                    return Bound::Exact(BigUint::one() << (exp * shift_per_unit));
                }
            }
        }
        if base == 2 {
            Bound::Exp2(Box::new(self))
        } else {
            Bound::Exp4(Box::new(self))
        }
    }

    pub fn exp2(self, digit_cap: usize) -> Bound {
        self.exp_base(2, digit_cap)
    }

    pub fn exp4(self, digit_cap: usize) -> Bound {
        self.exp_base(4, digit_cap)
    }

    pub fn mul(self, other: Bound, digit_cap: usize) -> Bound {
        match (&self, &other) {
            (Bound::Exact(a), Bound::Exact(b)) => {
                if a.bits() + b.bits() < digit_cap as u64 * 4 {
                    return Bound::Exact(a * b);
                }
                Bound::Mul(Box::new(self), Box::new(other))
            }
            _ => Bound::Mul(Box::new(self), Box::new(other)),
        }
    }

    pub fn add(self, other: Bound, digit_cap: usize) -> Bound {
        match (&self, &other) {
            (Bound::Exact(a), Bound::Exact(b)) => {
                if a.bits().max(b.bits()) < digit_cap as u64 * 4 {
                    return Bound::Exact(a + b);
                }
                Bound::Add(Box::new(self), Box::new(other))
            }
            _ => Bound::Add(Box::new(self), Box::new(other)),
        }
    }
}

/// `T(0) = 1`, `T(i) = 2^T(i−1)`; symbolic beyond the digit cap.
pub fn tower(i: u32, digit_cap: usize) -> Bound {
    let mut t = Bound::Exact(BigUint::one());
    for _ in 0..i {
        t = t.exp2(digit_cap);
    }
    t
}

/// Tower built from 4s: `T4(0) = 1`, `T4(i) = 4^T4(i−1)`.
pub fn tower4(i: u32, digit_cap: usize) -> Bound {
    let mut t = Bound::Exact(BigUint::one());
    for _ in 0..i {
        t = t.exp4(digit_cap);
    }
    t
}

/// `log*(n) = min { i : T(i) ≥ n }` for `n ≥ 1`.
pub fn log_star(n: &BigUint) -> Result<u32> {
    if n < &BigUint::one() {
        return Err(Error::OutOfRange("log* needs n >= 1".into()));
    }
    let mut i = 0;
    let mut t = BigUint::one();
    loop {
        if &t >= n {
            return Ok(i);
        }
        i += 1;
        // t is at most ~n here, so one more squaring tower step is cheap
        let exp = u64::try_from(&t)
            .map_err(|_| Error::CapExceeded("log* intermediate exceeded u64".into()))?;
        t = BigUint::one() << exp;
    }
}

pub fn log_star_u64(n: u64) -> u32 {
    log_star(&BigUint::from(n)).expect("n >= 1")
}

/// log* on possibly-symbolic values, using `log*(2^x) = 1 + log*(x)` for
/// `x ≥ 1` and `log*(4^x) = 1 + log*(2x)`.
pub fn log_star_sym(b: &Bound) -> Result<u32> {
    match b {
        Bound::Exact(x) => log_star(x),
        Bound::Exp2(inner) => Ok(1 + log_star_sym(inner)?),
        Bound::Exp4(inner) => match inner.as_ref() {
            Bound::Exact(x) => Ok(1 + log_star(&(x * 2u32))?),
            _ => Err(Error::OutOfRange(
                "log* of 4^x needs an exact exponent".into(),
            )),
        },
        _ => Err(Error::OutOfRange(
            "log* of a symbolic product or sum is not supported".into(),
        )),
    }
}

/// Binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut out = BigUint::one();
    for i in 0..k.min(n - k) {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}

/// Upper bound on the number of game values with `s` of `k` pebbles placed:
/// `f(k,k) ≤ 4^C(k,2)` and `f(k,s) ≤ 2^f(k,s+1)`.
pub fn value_count_bound(k: u32, s: u32, digit_cap: usize) -> Result<Bound> {
    if s > k {
        return Err(Error::OutOfRange("s must be at most k".into()));
    }
    let pairs = binomial(k as u64, 2);
    let mut bound = Bound::Exact(pairs).exp4(digit_cap);
    for _ in s..k {
        bound = bound.exp2(digit_cap);
    }
    Ok(bound)
}

/// Upper bound on the number of rank-k values of graphs with no pebbles:
/// `T(k + 2 + log* k)` (up to an additive constant, which is not included).
pub fn value_space_bound(k: u32, digit_cap: usize) -> Bound {
    tower(k + 2 + log_star_u64(k.max(1) as u64), digit_cap)
}

/// `U(k) = Σ_{i=0}^{g−1} (k·g)^i` for an explicitly supplied `g`.
pub fn rooted_class_order_bound(k: u64, g: u64) -> BigUint {
    let base = BigUint::from(k) * BigUint::from(g);
    let mut sum = BigUint::from(0u32);
    let mut pow = BigUint::one();
    for _ in 0..g {
        sum += &pow;
        pow *= &base;
    }
    sum
}

/// Length recurrence for value-defining formulas: `l(k,k) = 18·C(k,2)` and
/// `l(k,s) = f(k,s+1) · (l(k,s+1) + 10)`, with the `f` bounds above.
pub fn length_bound(k: u32, s: u32, digit_cap: usize) -> Result<Bound> {
    if s > k {
        return Err(Error::OutOfRange("s must be at most k".into()));
    }
    let mut l = Bound::Exact(BigUint::from(18u32) * binomial(k as u64, 2));
    for level in (s..k).rev() {
        let f_next = value_count_bound(k, level + 1, digit_cap)?;
        l = f_next.mul(l.add(Bound::from_u64(10), digit_cap), digit_cap);
    }
    Ok(l)
}

/// One row of a succinctness table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundTableRow {
    pub n: usize,
    /// Minimum bounded definability rank over the isomorphism classes of
    /// order `n`, checked against graphs of order at most `order_bound`.
    pub q_hat: u32,
    /// Running maximum of `q_hat`.
    pub q_hat_star: u32,
    pub order_bound: usize,
    /// The reference bound `log*(n) + 5`.
    pub log_star_bound: u32,
}

/// Brute-force succinctness table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundTable {
    pub rows: Vec<BoundTableRow>,
    /// Indices `n` where `q_hat(n+1) < q_hat(n)` within the table — reported,
    /// never asserted.
    pub non_monotone_at: Vec<usize>,
}

/// Compute `q̂_N(n)` for `n = 1..=n_max`: the minimum over all isomorphism
/// classes of order `n` of the bounded definability rank against graphs of
/// order at most `order_bound`. Rows are independent and computed on the
/// worker pool.
pub fn q_table(n_max: usize, order_bound: usize, caps: (usize, u32)) -> Result<BoundTable> {
    let (n_cap, k_cap) = caps;
    if n_max > n_cap.min(5) {
        return Err(Error::CapExceeded(format!(
            "q-table rows capped at order {} (asked for {n_max})",
            n_cap.min(5)
        )));
    }
    if order_bound > 7 {
        return Err(Error::CapExceeded(format!(
            "q-table order bound capped at 7 (asked for {order_bound})"
        )));
    }
    let workers = crate::worker_threads().max(1);
    let ns: Vec<usize> = (1..=n_max).collect();
    let mut q_by_n = vec![0u32; n_max + 1];
    let results: Vec<Result<(usize, u32)>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in ns.chunks(ns.len().div_ceil(workers)) {
            let chunk = chunk.to_vec();
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for n in chunk {
                    let mut best: Option<u32> = None;
                    for g in enumerate_graphs(n, 9)? {
                        let k = bounded_definability_rank(&g, order_bound, k_cap)?;
                        best = Some(best.map_or(k, |b| b.min(k)));
                    }
                    out.push(Ok((n, best.expect("at least one class per order"))));
                }
                out
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    for r in results {
        let (n, q) = r?;
        q_by_n[n] = q;
    }
    let mut rows = Vec::new();
    let mut running = 0;
    let mut non_monotone_at = Vec::new();
    for n in 1..=n_max {
        running = running.max(q_by_n[n]);
        if n > 1 && q_by_n[n] < q_by_n[n - 1] {
            non_monotone_at.push(n - 1);
        }
        rows.push(BoundTableRow {
            n,
            q_hat: q_by_n[n],
            q_hat_star: running,
            order_bound,
            log_star_bound: log_star_u64(n as u64) + 5,
        });
    }
    Ok(BoundTable {
        rows,
        non_monotone_at,
    })
}

impl BoundTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,q_hat,q_hat_star,order_bound,log_star_bound\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n, r.q_hat, r.q_hat_star, r.order_bound, r.log_star_bound
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_values() {
        let cap = 40_000;
        let expect = [1u64, 2, 4, 16, 65536];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(tower(i as u32, cap), Bound::from_u64(e));
        }
        // T(5) is exact with ~20k digits; T(6) turns symbolic
        assert!(tower(5, cap).exact().is_some());
        assert!(matches!(tower(6, cap), Bound::Exp2(_)));
    }

    #[test]
    fn log_star_round_trips() {
        assert_eq!(log_star_u64(1), 0);
        assert_eq!(log_star_u64(65536), 4);
        assert_eq!(log_star_u64(65537), 5);
        for i in 1..=4u32 {
            let t = tower(i, 40_000);
            let t = t.exact().unwrap();
            assert_eq!(log_star(t).unwrap(), i);
            assert_eq!(log_star(&(t + 1u32)).unwrap(), i + 1);
        }
        // the symbolic cases i = 5, 6
        for i in 5..=6u32 {
            assert_eq!(log_star_sym(&tower(i, 40_000)).unwrap(), i);
        }
    }

    #[test]
    fn f_bound_base_case() {
        // f(2,2) <= 4^C(2,2) = 4
        let b = value_count_bound(2, 2, 40_000).unwrap();
        assert_eq!(b, Bound::from_u64(4));
    }

    #[test]
    fn geometric_sum_example() {
        assert_eq!(rooted_class_order_bound(1, 3), BigUint::from(13u32));
    }

    #[test]
    fn length_recurrence_for_k3() {
        let cap = 40_000;
        // l(3,3) = 18*C(3,2) = 54
        assert_eq!(length_bound(3, 3, cap).unwrap(), Bound::from_u64(54));
        // l(3,2) = f(3,3) * (l(3,3)+10) = 4^3 * 64 = 4096
        assert_eq!(length_bound(3, 2, cap).unwrap(), Bound::from_u64(4096));
        // l(3,1) = f(3,2) * (l(3,2)+10) = 2^64 * 4106 — exact
        let l31 = length_bound(3, 1, cap).unwrap();
        let expect = (BigUint::one() << 64u32) * BigUint::from(4106u32);
        assert_eq!(l31.exact().unwrap(), &expect);
        // l(3,0) involves 2^(2^64): symbolic
        assert!(length_bound(3, 0, cap).unwrap().exact().is_none());
    }
}
