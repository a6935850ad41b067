use crate::error::{Error, Result};

/// The primes up to `limit`, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    primes: Vec<u64>,
    limit: u64,
}

impl PrimeTable {
    /// Sieve of Eratosthenes.
    pub fn sieve(limit: u64) -> Self {
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if composite[i] {
                continue;
            }
            primes.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        Self { primes, limit }
    }

    /// Smallest table holding at least `count` primes.
    pub fn first(count: usize) -> Self {
        let mut limit = 16u64;
        loop {
            let table = Self::sieve(limit);
            if table.primes.len() >= count {
                return table;
            }
            limit *= 2;
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `p_n`, 1-based.
    pub fn nth(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.primes.get(i).copied())
    }

    /// Largest integer this table can factor by trial division.
    pub fn factorization_limit(&self) -> u64 {
        self.limit.saturating_mul(self.limit)
    }

    /// Prime factorization as `(p, exponent)` pairs.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(Error::InvalidInput("cannot factor 0".into()));
        }
        if n > self.factorization_limit() {
            return Err(Error::Overflow {
                n,
                limit: self.factorization_limit(),
            });
        }
        let mut rest = n;
        let mut out = Vec::new();
        for &p in &self.primes {
            if p * p > rest {
                break;
            }
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        if rest > 1 {
            out.push((rest, 1));
        }
        Ok(out)
    }

    /// Möbius function by trial division.
    pub fn mobius(&self, n: u64) -> Result<i8> {
        let factors = self.factorize(n)?;
        if factors.iter().any(|&(_, e)| e > 1) {
            return Ok(0);
        }
        Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
    }
}

/// `μ(1), …, μ(n)` by a linear sieve. Index 0 of the result is unused and
/// holds 0.
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}
