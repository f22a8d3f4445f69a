//! Exact integer number theory over arbitrary-precision integers.
//!
//! Valuations, odd parts, lcm folds and binomial coefficients with a
//! falling-factorial convention that stays defined for negative upper
//! arguments.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Nonnegative integer.
pub type Nat = BigUint;
/// Signed integer.
pub type Int = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not a prime")]
    NotPrime(Nat),
    #[error("argument must be positive")]
    Zero,
    #[error("invalid range {lo}..{hi}")]
    InvalidRange { lo: Nat, hi: Nat },
}

const TRIAL_LIMIT: u64 = 1_000_000;

// First thirteen primes: deterministic Miller-Rabin below 3.3e24.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_EXTRA_BASES: [u64; 7] = [43, 47, 53, 59, 61, 67, 71];

pub fn nat(x: u64) -> Nat {
    Nat::from(x)
}

/// Primality test: trial division up to 10^6, Miller-Rabin beyond.
pub fn is_prime(n: &Nat) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        if small <= TRIAL_LIMIT {
            return is_prime_trial(small);
        }
    }
    for p in MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let certain = n.bits() < 81; // 2^81 < 3.3e24
    miller_rabin(n, &MR_BASES) && (certain || miller_rabin(n, &MR_EXTRA_BASES))
}

fn is_prime_trial(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn miller_rabin(n: &Nat, bases: &[u64]) -> bool {
    let one = Nat::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in bases {
        let a = Nat::from(a) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn require_prime(p: &Nat) -> Result<(), ArithError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::NotPrime(p.clone()))
    }
}

/// The exponent of the prime `p` in `x`.
pub fn nu_p(p: &Nat, x: &Nat) -> Result<u64, ArithError> {
    require_prime(p)?;
    if x.is_zero() {
        return Err(ArithError::Zero);
    }
    Ok(valuation_unchecked(p, x))
}

// Caller guarantees p >= 2 and x >= 1.
pub(crate) fn valuation_unchecked(p: &Nat, x: &Nat) -> u64 {
    if *p == nat(2) {
        return x.trailing_zeros().unwrap_or(0);
    }
    let mut v = 0;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// `p^e`.
pub fn prime_power(p: &Nat, e: u64) -> Nat {
    let mut acc = Nat::one();
    for _ in 0..e {
        acc *= p;
    }
    acc
}

/// Largest power of `p` dividing `x`.
pub fn p_share(p: &Nat, x: &Nat) -> Result<Nat, ArithError> {
    Ok(prime_power(p, nu_p(p, x)?))
}

/// Largest odd divisor of `x`.
pub fn odd_part(x: &Nat) -> Result<Nat, ArithError> {
    if x.is_zero() {
        return Err(ArithError::Zero);
    }
    Ok(x >> x.trailing_zeros().unwrap_or(0))
}

/// `lcm(a, a+1, ..., b)`.
pub fn lcm_range(a: u64, b: u64) -> Result<Nat, ArithError> {
    if a == 0 || a > b {
        return Err(ArithError::InvalidRange {
            lo: nat(a),
            hi: nat(b),
        });
    }
    Ok(lcm_all((a..=b).map(nat)))
}

pub fn lcm_all<I: IntoIterator<Item = Nat>>(values: I) -> Nat {
    values.into_iter().fold(Nat::one(), |acc, v| acc.lcm(&v))
}

/// gcd of a sequence of signed integers, as a natural number. Empty gives 0.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Int>>(values: I) -> Nat {
    let g = values.into_iter().fold(Int::zero(), |acc, v| acc.gcd(v));
    g.magnitude().clone()
}

/// Binomial coefficient `n(n-1)...(n-k+1)/k!`, valid for any integer `n`.
pub fn binom(n: &Int, k: u64) -> Int {
    let mut acc = Int::one();
    let mut top = n.clone();
    for i in 0..k {
        acc *= &top;
        // acc = binom(n, i) * (n - i), exactly divisible by i + 1
        acc = acc.div_floor(&Int::from(i + 1));
        top -= 1;
    }
    acc
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(x: &Nat) -> Result<Vec<(Nat, u64)>, ArithError> {
    if x.is_zero() {
        return Err(ArithError::Zero);
    }
    let mut out: Vec<(Nat, u64)> = Vec::new();
    let mut rest = x.clone();
    let twos = rest.trailing_zeros().unwrap_or(0);
    if twos > 0 {
        out.push((nat(2), twos));
        rest >>= twos;
    }
    let mut d = 3u64;
    while d <= TRIAL_LIMIT {
        let dn = nat(d);
        if &dn * &dn > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&dn);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((dn, e));
        }
        d += 2;
    }
    if !rest.is_one() {
        let mut large = Vec::new();
        split_large(rest, &mut large);
        large.sort();
        for p in large {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out.sort();
    Ok(out)
}

// `n` has no prime factor below the trial limit.
fn split_large(n: Nat, out: &mut Vec<Nat>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let mut c = 1u64;
    let d = loop {
        if let Some(d) = pollard_brent(&n, c) {
            break d;
        }
        c += 1;
    };
    let other = &n / &d;
    split_large(d, out);
    split_large(other, out);
}

fn pollard_brent(n: &Nat, c: u64) -> Option<Nat> {
    let c = nat(c);
    let step = |x: &Nat| (x * x + &c) % n;
    let mut y = nat(2);
    let mut r = 1u64;
    let mut q = Nat::one();
    let mut g = Nat::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let batch = 64u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> Int {
        Int::from(x)
    }

    #[test]
    fn valuations() {
        assert_eq!(nu_p(&nat(2), &nat(12)), Ok(2));
        assert_eq!(nu_p(&nat(3), &nat(1)), Ok(0));
        assert_eq!(nu_p(&nat(5), &nat(250)), Ok(3));
    }

    #[test]
    fn valuation_rejects_bad_input() {
        assert_eq!(nu_p(&nat(1), &nat(12)), Err(ArithError::NotPrime(nat(1))));
        assert_eq!(nu_p(&nat(0), &nat(12)), Err(ArithError::NotPrime(nat(0))));
        assert_eq!(nu_p(&nat(4), &nat(12)), Err(ArithError::NotPrime(nat(4))));
        assert_eq!(nu_p(&nat(3), &nat(0)), Err(ArithError::Zero));
    }

    #[test]
    fn odd_parts() {
        assert_eq!(odd_part(&nat(60)), Ok(nat(15)));
        assert_eq!(odd_part(&nat(7)), Ok(nat(7)));
        assert_eq!(odd_part(&nat(1024)), Ok(nat(1)));
        assert_eq!(odd_part(&nat(0)), Err(ArithError::Zero));
    }

    #[test]
    fn lcm_ranges() {
        assert_eq!(lcm_range(1, 3), Ok(nat(6)));
        assert_eq!(lcm_range(1, 1), Ok(nat(1)));
        assert_eq!(lcm_range(1, 6), Ok(nat(60)));
        assert!(lcm_range(0, 3).is_err());
        assert!(lcm_range(4, 3).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(&int(5), 2), int(10));
        assert_eq!(binom(&int(-4), 2), int(10));
        assert_eq!(binom(&int(0), 2), int(0));
        assert_eq!(binom(&int(-1), 3), int(-1));
        assert_eq!(binom(&int(7), 0), int(1));
        assert_eq!(binom(&int(3), 5), int(0));
    }

    #[test]
    fn pascal_rule_on_negative_range() {
        for n in -50i64..=50 {
            for k in 1..=12u64 {
                assert_eq!(
                    binom(&int(n), k),
                    binom(&int(n - 1), k - 1) + binom(&int(n - 1), k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn primality_small_and_large() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(&nat(n))).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(&nat(1_000_003)));
        assert!(!is_prime(&nat(1_000_001)));
        // Strong pseudoprime to every base 2..=23.
        assert!(!is_prime(&"3825123056546413051".parse::<Nat>().unwrap()));
        assert!(is_prime(
            &"170141183460469231731687303715884105727"
                .parse::<Nat>()
                .unwrap()
        ));
    }

    #[test]
    fn factorization() {
        assert_eq!(
            factorize(&nat(360)).unwrap(),
            vec![(nat(2), 3), (nat(3), 2), (nat(5), 1)]
        );
        assert_eq!(factorize(&nat(1)).unwrap(), vec![]);
        // Two primes above the trial-division bound.
        let p = nat(1_000_003);
        let q = nat(1_000_033);
        let f = factorize(&(&p * &q * &p)).unwrap();
        assert_eq!(f, vec![(p, 2), (q, 1)]);
        let y_e8 = nat(2_329_089_562_800);
        let f = factorize(&y_e8).unwrap();
        let back = f
            .iter()
            .fold(Nat::one(), |acc, (p, e)| acc * prime_power(p, *e));
        assert_eq!(back, y_e8);
    }

    #[test]
    fn prime_product_identity() {
        for x in 1u64..=2000 {
            let xn = nat(x);
            let mut prod = Nat::one();
            for p in (2..=x).filter(|&p| is_prime(&nat(p))) {
                prod *= prime_power(&nat(p), nu_p(&nat(p), &xn).unwrap());
            }
            assert_eq!(prod, xn);
        }
    }

    #[test]
    fn odd_part_times_two_power() {
        for x in 1u64..=1_000_000 {
            let xn = nat(x);
            let o = odd_part(&xn).unwrap();
            assert!(o.is_odd());
            assert_eq!(o << nu_p(&nat(2), &xn).unwrap(), xn);
        }
    }
}
