use alloc::vec;
use alloc::vec::Vec;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The first `count` odd primes `3, 5, 7, 11, …`.
pub fn odd_primes(count: usize) -> Vec<u64> {
    let mut limit = 64usize.max(count * 16);
    loop {
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        let primes: Vec<u64> = (3..=limit).filter(|&k| sieve[k]).map(|k| k as u64).take(count).collect();
        if primes.len() == count {
            return primes;
        }
        limit *= 2;
    }
}

/// The `n`-th prime counting from `prime(0) = 2`.
pub fn nth_prime(n: usize) -> u64 {
    if n == 0 {
        2
    } else {
        odd_primes(n)[n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(odd_primes(6), vec![3, 5, 7, 11, 13, 17]);
        assert_eq!(nth_prime(0), 2);
        assert_eq!(nth_prime(8), 23);
        assert!(is_prime(7919) && !is_prime(7917) && !is_prime(1));
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let ps = odd_primes(2000);
        assert!(ps.iter().all(|&p| is_prime(p)));
        let expected: Vec<u64> = (3..=*ps.last().unwrap()).filter(|&k| is_prime(k)).collect();
        assert_eq!(ps, expected);
    }
}
