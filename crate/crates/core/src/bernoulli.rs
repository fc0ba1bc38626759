//! Bernoulli numbers mod p, irregular pairs, generalized Bernoulli numbers
//! B_{1,ω^{k−1}} mod p^m, and eigenspace exponents e_k.

use crate::arith::{checked_prime_power, inverse_table, mod_mul, mod_pow, teich_char, Fp};
use crate::error::VanlabError;

/// Even-index Bernoulli numbers mod p: pairs (k, B_k mod p) for even k in
/// [2, p−3], ascending in k. Empty for p = 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    pub p: u64,
    pub values: Vec<(u64, u64)>,
}

impl BernoulliTable {
    pub fn get(&self, k: u64) -> Option<u64> {
        self.values
            .binary_search_by_key(&k, |&(k, _)| k)
            .ok()
            .map(|i| self.values[i].1)
    }
}

/// B_k mod p for all even k in [2, p−3] by power-series inversion: with
/// A(x) = Σ_{i≥0} x^i/(i+1)! (that is, (e^x − 1)/x), the inverse series
/// C = A^{-1} has c_k = B_k/k!, and every factorial in range is a unit mod p.
pub fn bernoulli_even_mod_p(p: u64) -> BernoulliTable {
    let fp = Fp::new(p);
    if p < 5 {
        return BernoulliTable {
            p,
            values: Vec::new(),
        };
    }
    let n = (p - 3) as usize; // highest index needed
    let mut fact = vec![1u64; n + 2];
    for i in 1..=n + 1 {
        fact[i] = fp.mul(fact[i - 1], i as u64);
    }
    let mut inv_fact = vec![1u64; n + 2];
    inv_fact[n + 1] = fp.inv(fact[n + 1]).expect("factorial below p is a unit");
    for i in (0..=n).rev() {
        inv_fact[i] = fp.mul(inv_fact[i + 1], (i + 1) as u64);
    }
    // a_i = 1/(i+1)!, a_0 = 1; invert by the linear recurrence
    // c_n = -Σ_{i=1}^{n} a_i c_{n-i}.
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for j in 1..=n {
        let mut s = 0u64;
        for i in 1..=j {
            s = fp.add(s, fp.mul(inv_fact[i + 1], c[j - i]));
        }
        c[j] = fp.neg(s);
    }
    let values = (1..)
        .map(|j| 2 * j)
        .take_while(|&k| k <= p - 3)
        .map(|k| (k, fp.mul(fact[k as usize], c[k as usize])))
        .collect();
    BernoulliTable { p, values }
}

/// Independent second algorithm: the classical recurrence
/// Σ_{j=0}^{k} C(k+1, j) B_j = 0, solved for B_k with k+1 < p.
pub fn bernoulli_even_mod_p_recurrence(p: u64) -> BernoulliTable {
    let fp = Fp::new(p);
    if p < 5 {
        return BernoulliTable {
            p,
            values: Vec::new(),
        };
    }
    let n = (p - 3) as usize;
    let inv = inverse_table(&fp, n + 1);
    let mut b = vec![0u64; n + 1];
    b[0] = 1;
    b[1] = fp.neg(inv[2]); // B_1 = -1/2
    for k in 2..=n {
        // binomial row C(k+1, j) built multiplicatively
        let mut binom = 1u64; // C(k+1, 0)
        let mut s = fp.mul(binom, b[0]);
        for j in 1..k {
            binom = fp.mul(binom, fp.mul(fp.reduce((k + 2 - j) as u64), inv[j]));
            s = fp.add(s, fp.mul(binom, b[j]));
        }
        b[k] = fp.neg(fp.mul(s, inv[k + 1]));
    }
    let values = (1..)
        .map(|j| 2 * j)
        .take_while(|&k| k <= p - 3)
        .map(|k| (k, b[k as usize]))
        .collect();
    BernoulliTable { p, values }
}

/// Even k in [2, p−3] with B_k ≡ 0 mod p, ascending.
pub fn irregular_indices(p: u64) -> Vec<u64> {
    bernoulli_even_mod_p(p)
        .values
        .iter()
        .filter(|&&(_, v)| v == 0)
        .map(|&(k, _)| k)
        .collect()
}

/// Number of irregular pairs for p (zero iff p is regular).
pub fn index_of_irregularity(p: u64) -> u64 {
    irregular_indices(p).len() as u64
}

/// Value and p-adic valuation of B_{1,ω^{k−1}} at working precision p^m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenB1 {
    /// B_{1,ω^{k−1}} mod p^m.
    pub value: u64,
    /// min(m, v_p(value)).
    pub valuation: u32,
    /// True when the valuation hit the precision ceiling m.
    pub exhausted: bool,
}

/// B_{1,ω^{k−1}} = (1/p) Σ_{a=1}^{p−1} ω(a)^{k−1} a, evaluated mod p^m.
/// The sum is provably divisible by p (its mod-p reduction is the power sum
/// Σ a^k with (p−1) ∤ k), which the implementation asserts before dividing.
pub fn gen_bernoulli_b1(p: u64, k: u64, m: u32) -> Result<GenB1, VanlabError> {
    assert!(k >= 2 && k % 2 == 0 && k <= p - 3, "k out of range");
    let big = checked_prime_power(p, m + 1)
        .ok_or(VanlabError::PrecisionExhausted { p, k, m })?;
    let mut sum = 0u64;
    for a in 1..p {
        let w = teich_char(a, p, m + 1);
        let term = mod_mul(mod_pow(w, k - 1, big), a, big);
        sum = ((sum as u128 + term as u128) % big as u128) as u64;
    }
    assert_eq!(sum % p, 0, "character sum must be divisible by p");
    let pm = big / p;
    let value = (sum / p) % pm;
    if value == 0 {
        return Ok(GenB1 {
            value,
            valuation: m,
            exhausted: true,
        });
    }
    let mut v = 0u32;
    let mut x = value;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Ok(GenB1 {
        value,
        valuation: v,
        exhausted: false,
    })
}

/// Eigenspace exponent e_k = v_p(B_{1,ω^{k−1}}) for an irregular pair (p, k),
/// escalating the working precision from m = 2 until the valuation resolves.
/// Errors only when the next precision step would leave the word range or
/// exceed `max_m`.
pub fn eigenspace_exponent(p: u64, k: u64, max_m: u32) -> Result<u32, VanlabError> {
    let mut m = 2;
    loop {
        let g = gen_bernoulli_b1(p, k, m)?;
        if !g.exhausted {
            return Ok(g.valuation);
        }
        m += 1;
        if m > max_m {
            return Err(VanlabError::PrecisionExhausted { p, k, m });
        }
    }
}

/// Default ceiling for precision escalation; far above any known e_k.
pub const DEFAULT_PRECISION_CAP: u32 = 16;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mod_inv;

    #[test]
    fn small_tables() {
        assert_eq!(bernoulli_even_mod_p(3).values, vec![]);
        assert_eq!(bernoulli_even_mod_p(5).values, vec![(2, 1)]);
        assert_eq!(bernoulli_even_mod_p(7).values, vec![(2, 6), (4, 3)]);
    }

    #[test]
    fn table_37_vanishes_only_at_32() {
        let t = bernoulli_even_mod_p(37);
        for &(k, v) in &t.values {
            assert_eq!(v == 0, k == 32, "k={k}");
        }
    }

    #[test]
    fn dual_algorithms_agree_to_500() {
        let mut p = 3;
        while p <= 500 {
            if crate::arith::is_odd_prime(p) {
                assert_eq!(
                    bernoulli_even_mod_p(p),
                    bernoulli_even_mod_p_recurrence(p),
                    "p={p}"
                );
            }
            p += 2;
        }
    }

    #[test]
    fn irregular_indices_examples() {
        assert_eq!(irregular_indices(13), Vec::<u64>::new());
        assert_eq!(irregular_indices(37), vec![32]);
        assert_eq!(irregular_indices(157), vec![62, 110]);
        assert_eq!(irregular_indices(691), vec![12, 200]);
        assert_eq!(index_of_irregularity(11), 0);
        assert_eq!(index_of_irregularity(691), 2);
    }

    #[test]
    fn gen_b1_examples() {
        let g = gen_bernoulli_b1(5, 2, 1).unwrap();
        assert_eq!(g.valuation, 0);
        assert!(!g.exhausted);
        let g = gen_bernoulli_b1(37, 32, 2).unwrap();
        assert_eq!(g.valuation, 1);
        assert!(!g.exhausted);
        let g = gen_bernoulli_b1(37, 2, 1).unwrap();
        assert_eq!(g.valuation, 0);
    }

    #[test]
    fn gen_b1_matches_bernoulli_quotient_mod_p() {
        // classical congruence B_{1,ω^{k−1}} ≡ B_k / k mod p
        for p in [5u64, 7, 13, 37, 59, 101] {
            let table = bernoulli_even_mod_p(p);
            for &(k, bk) in &table.values {
                let lhs = gen_bernoulli_b1(p, k, 1).unwrap().value % p;
                let rhs = bk * mod_inv(k, p).unwrap() % p;
                assert_eq!(lhs, rhs, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn eigenspace_exponent_examples() {
        assert_eq!(eigenspace_exponent(37, 32, DEFAULT_PRECISION_CAP).unwrap(), 1);
        assert_eq!(eigenspace_exponent(59, 44, DEFAULT_PRECISION_CAP).unwrap(), 1);
        assert_eq!(eigenspace_exponent(691, 12, DEFAULT_PRECISION_CAP).unwrap(), 1);
    }

    #[test]
    fn valuation_positive_iff_irregular() {
        for p in [5u64, 7, 11, 13, 37, 59, 67, 101, 103] {
            let ks = irregular_indices(p);
            let mut k = 2;
            while k <= p - 3 {
                let g = gen_bernoulli_b1(p, k, 1).unwrap();
                assert_eq!(g.valuation >= 1, ks.contains(&k), "p={p} k={k}");
                k += 2;
            }
        }
    }
}
