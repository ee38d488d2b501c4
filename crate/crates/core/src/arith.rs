//! Small number-theoretic helpers over `u64`.
//!
//! Every quantity here is bounded by a group order or exponent, so trial
//! division is all that is ever needed.

pub use num_integer::{gcd, lcm};

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
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn divides(d: u64, n: u64) -> bool {
    d != 0 && n.is_multiple_of(d)
}

/// Exponent of `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `n_p`: the largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(valuation(n, p))
}

/// `n_{p'}`: the largest divisor of `n` coprime to `p`.
pub fn p_prime_part(n: u64, p: u64) -> u64 {
    n / p_part(n, p)
}

/// Largest divisor of `n` coprime to `m`.
pub fn coprime_part(mut n: u64, m: u64) -> u64 {
    loop {
        let g = gcd(n, m);
        if g == 1 {
            return n;
        }
        n /= g;
    }
}

/// The part of `n` built from the primes dividing `m`.
pub fn supported_part(n: u64, m: u64) -> u64 {
    n / coprime_part(n, m)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `Some(p)` when `n = p^k` with `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    n >= 1 && p_part(n, p) == n
}

/// Integer base-`p` logarithm of a power of `p`.
pub fn log_p(n: u64, p: u64) -> u32 {
    debug_assert!(is_power_of(n, p));
    valuation(n, p)
}

/// Multiplicative order of `k` modulo `m` (`gcd(k, m) = 1`, `m >= 1`).
pub fn mult_order(k: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = k % m;
    let mut ord = 1;
    while x != 1 {
        x = x * k % m;
        ord += 1;
    }
    ord
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lattice_basics() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(p_prime_part(24, 2), 3);
        assert_eq!(p_part(24, 2), 8);
        assert_eq!(coprime_part(360, 6), 5);
        assert_eq!(supported_part(360, 6), 72);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(prime_power_base(27), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn phi_sums_to_n_over_divisors() {
        for n in 1..200u64 {
            let s: u64 = divisors(n).into_iter().map(euler_phi).sum();
            assert_eq!(s, n);
        }
    }
}
