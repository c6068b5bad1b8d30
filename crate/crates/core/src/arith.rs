//! Small integer helpers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

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
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_prime_power_of(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

/// True when no prime power `q^(k+1)` divides `n`.
pub fn free_of_powers_above(n: u64, k: u32) -> bool {
    factorize(n).iter().all(|&(_, e)| e <= k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(272), vec![(2, 4), (17, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(p_part(48, 5), 1);
        assert!(free_of_powers_above(12, 2));
        assert!(!free_of_powers_above(12, 1));
        assert!(is_prime(17) && !is_prime(1) && !is_prime(15));
        assert_eq!(lcm(4, 6), 12);
    }
}
