//! Small integer arithmetic on group orders.

use serde::Serialize;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The prime `p` when `n = p^k` with `k ≥ 1`. `n = 1` gives `None`; use
/// [`OrderKind`] to tell it apart from composite orders.
pub fn is_prime_power(n: u64) -> Option<u64> {
    match OrderKind::of(n) {
        OrderKind::PrimePower { p, .. } => Some(p),
        _ => None,
    }
}

/// Trivial / prime power / composite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum OrderKind {
    Trivial,
    PrimePower { p: u64, k: u32 },
    Composite,
}

impl OrderKind {
    pub fn of(n: u64) -> Self {
        assert!(n >= 1, "orders are positive");
        let f = factorize(n);
        match f.as_slice() {
            [] => OrderKind::Trivial,
            [(p, k)] => OrderKind::PrimePower { p: *p, k: *k },
            _ => OrderKind::Composite,
        }
    }

    /// Trivial or prime power: the orders the Oliver criteria accept.
    pub fn is_trivial_or_prime_power(self) -> bool {
        !matches!(self, OrderKind::Composite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(is_prime_power(8), Some(2));
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(1), None);
        assert_eq!(is_prime_power(49), Some(7));
        assert_eq!(OrderKind::of(1), OrderKind::Trivial);
        assert_eq!(OrderKind::of(27), OrderKind::PrimePower { p: 3, k: 3 });
        assert_eq!(OrderKind::of(60), OrderKind::Composite);
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 1..500u64 {
            let f = factorize(n);
            assert_eq!(f.iter().map(|&(p, k)| p.pow(k)).product::<u64>(), n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }
}
