//! Exact integer and rational utilities: factorization, prime-set number
//! tests, least common rational multiples, multiplicative orders.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A set of primes, either all of them or an explicit finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSet {
    AllPrimes,
    Explicit(Vec<BigInt>),
}

impl PrimeSet {
    /// Builds an explicit set, validating that every member is prime.
    /// The set is stored sorted and deduplicated.
    pub fn explicit(primes: Vec<BigInt>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut sorted = primes;
        sorted.sort();
        sorted.dedup();
        for p in &sorted {
            if !is_prime(p) {
                return Err(Error::MalformedInput(format!("{p} is not prime")));
            }
        }
        Ok(PrimeSet::Explicit(sorted))
    }

    pub fn contains(&self, p: &BigInt) -> bool {
        match self {
            PrimeSet::AllPrimes => is_prime(p),
            PrimeSet::Explicit(set) => set.binary_search(p).is_ok(),
        }
    }

    pub fn contains_two(&self) -> bool {
        self.contains(&BigInt::from(2))
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::AllPrimes => write!(f, "all"),
            PrimeSet::Explicit(set) => {
                let parts: Vec<String> = set.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Prime factorization of |n| as a prime -> exponent map; units give the
/// empty map.
pub fn factorize(n: &BigInt) -> Result<BTreeMap<BigInt, u32>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = BTreeMap::new();
    let mut rest = n.abs();
    let mut d = BigInt::from(2);
    let trial_bound = BigInt::from(1_000_000u32);
    while &d * &d <= rest && d <= trial_bound {
        while (&rest % &d).is_zero() {
            *out.entry(d.clone()).or_insert(0) += 1;
            rest /= &d;
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        if is_prime(&rest) {
            *out.entry(rest).or_insert(0) += 1;
        } else {
            // rare: composite cofactor beyond the trial bound
            let f = pollard_rho(&rest);
            let a = factorize(&f)?;
            let b = factorize(&(&rest / &f))?;
            for (p, k) in a.into_iter().chain(b) {
                *out.entry(p).or_insert(0) += k;
            }
        }
    }
    Ok(out)
}

/// Set of distinct primes dividing |n|.
pub fn prime_support(n: &BigInt) -> Result<Vec<BigInt>> {
    Ok(factorize(n)?.into_keys().collect())
}

/// True iff every prime divisor of n lies in rho; units qualify for any rho.
pub fn is_rho_number(n: &BigInt, rho: &PrimeSet) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    match rho {
        PrimeSet::AllPrimes => Ok(true),
        PrimeSet::Explicit(set) => {
            let mut rest = n.abs();
            for p in set {
                while (&rest % p).is_zero() {
                    rest /= p;
                }
            }
            Ok(rest.is_one())
        }
    }
}

/// The least positive rational that is an integer multiple of every input;
/// for p_i/q_i in lowest terms this is lcm(p_i)/gcd(q_i).
pub fn rational_lcm(values: &[BigRational]) -> Result<BigRational> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut num = BigInt::one();
    let mut den: Option<BigInt> = None;
    for v in values {
        if !v.is_positive() {
            return Err(Error::MalformedInput(format!("{v} is not positive")));
        }
        num = num.lcm(v.numer());
        den = Some(match den {
            None => v.denom().clone(),
            Some(d) => d.gcd(v.denom()),
        });
    }
    Ok(BigRational::new(num, den.expect("non-empty")))
}

/// Least k >= 1 with n^k = 1 mod p; computed by factoring p - 1 and
/// stripping primes from the exponent.
pub fn multiplicative_order(n: &BigInt, p: &BigInt) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::MalformedInput(format!("{p} is not prime")));
    }
    let reduced = n.mod_floor(p);
    if reduced.is_zero() {
        return Err(Error::DividesModulus {
            p: p.to_string(),
            n: n.to_string(),
        });
    }
    let mut order = p - BigInt::one();
    for (q, _) in factorize(&order)? {
        while (&order % &q).is_zero()
            && mod_pow(&reduced, &(&order / &q), p).is_one()
        {
            order /= &q;
        }
    }
    debug_assert!(mod_pow(&reduced, &order, p).is_one());
    Ok(order)
}

/// Additive order of x in Z_modulus.
pub fn additive_order(x: &BigInt, modulus: &BigInt) -> BigInt {
    let r = x.mod_floor(modulus);
    modulus / r.gcd(modulus)
}

pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> BigInt {
    base.modpow(exp, modulus)
}

/// Deterministic Miller-Rabin below 2^64, probabilistic with fixed bases
/// above (labels in practice stay far below that).
pub fn is_prime(n: &BigInt) -> bool {
    let n = n.abs();
    if n < BigInt::from(2) {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigInt::from(small);
        if n == s {
            return true;
        }
        if (&n % &s).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = &n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        let mut x = mod_pow(&a, &d, &n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::from(1);
    loop {
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = one.clone();
        while d.is_one() {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Convenience constructors used throughout the tests.
pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[allow(dead_code)]
pub fn rat_to_f64(q: &BigRational) -> Option<f64> {
    Some(q.numer().to_f64()? / q.denom().to_f64()?)
}
