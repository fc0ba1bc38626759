//! Auxiliary-prime corroboration: for an irregular pair (p, k), search for a
//! prime q ≡ 1 mod p at which the eigenprojected cyclotomic unit is not a
//! p-th power — a one-sided witness that the real eigenspace is p-free.

use crate::arith::{is_prime, mod_pow, primitive_root, Fp};
use crate::bernoulli::irregular_indices;
use crate::error::VanlabError;
use serde::{Deserialize, Serialize};

/// The `count` smallest primes q = mp + 1, ascending.
pub fn find_aux_primes(p: u64, count: usize) -> Vec<u64> {
    (1u64..)
        .map(|m| m * p + 1)
        .filter(|&q| is_prime(q))
        .take(count)
        .collect()
}

/// Eigenprojected cyclotomic unit mod q: with w = g^{(q−1)/p} for the
/// smallest primitive root g of q,
///   η = Π_{a=1}^{p−1} (1 − w^a)^{c_a},  c_a = a^{p−1−k} mod p.
/// Well-defined up to p-th powers; Σ c_a ≡ 0 mod p is asserted.
pub fn eigen_unit_mod_q(p: u64, k: u64, q: u64) -> Result<u64, VanlabError> {
    assert!(q % p == 1, "q must be 1 mod p");
    assert!(k >= 2 && k % 2 == 0 && k <= p - 3);
    let g = primitive_root(q);
    let w = mod_pow(g, (q - 1) / p, q);
    if w == 1 {
        return Err(VanlabError::DegenerateRoot(q));
    }
    let fq = Fp::new(q);
    let mut c_sum = 0u64;
    let mut wa = 1u64;
    let mut eta = 1u64;
    for a in 1..p {
        wa = fq.mul(wa, w);
        let c = mod_pow(a, p - 1 - k, p);
        c_sum = (c_sum + c) % p;
        eta = fq.mul(eta, fq.pow(fq.sub(1 % q, wa), c));
    }
    assert_eq!(c_sum, 0, "eigenprojection exponents must sum to 0 mod p");
    Ok(eta)
}

/// Single-q test: Witnessed iff η^{(q−1)/p} ≠ 1 mod q. Returns the power
/// residue together with the verdict; only the verdict is invariant under
/// the choice of primitive root.
pub fn vandiver_witness(p: u64, k: u64, q: u64) -> Result<(bool, u64), VanlabError> {
    let eta = eigen_unit_mod_q(p, k, q)?;
    let res = mod_pow(eta, (q - 1) / p, q);
    Ok((res != 1, res))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VandiverStatus {
    Witnessed,
    Inconclusive,
}

/// Outcome for one irregular pair. `q` is the witnessing auxiliary prime;
/// `tried` lists the auxiliary primes that failed to witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VandiverVerdict {
    pub k: u64,
    pub status: VandiverStatus,
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta_power_residue: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub tried: Vec<u64>,
}

/// One verdict per irregular pair of p, trying auxiliary primes in
/// ascending order until Witnessed or `max_aux` exhausted. Inconclusive is
/// one-sided evidence, never a failure.
pub fn check_vandiver(p: u64, max_aux: usize) -> Result<Vec<VandiverVerdict>, VanlabError> {
    check_vandiver_for(p, &irregular_indices(p), max_aux)
}

pub(crate) fn check_vandiver_for(
    p: u64,
    ks: &[u64],
    max_aux: usize,
) -> Result<Vec<VandiverVerdict>, VanlabError> {
    if ks.is_empty() {
        return Ok(Vec::new());
    }
    let aux = find_aux_primes(p, max_aux);
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let mut tried = Vec::new();
        let mut verdict = None;
        for &q in &aux {
            let (witnessed, res) = vandiver_witness(p, k, q)?;
            if witnessed {
                verdict = Some(VandiverVerdict {
                    k,
                    status: VandiverStatus::Witnessed,
                    q: Some(q),
                    eta_power_residue: Some(res),
                    tried: std::mem::take(&mut tried),
                });
                break;
            }
            tried.push(q);
        }
        out.push(verdict.unwrap_or(VandiverVerdict {
            k,
            status: VandiverStatus::Inconclusive,
            q: None,
            eta_power_residue: None,
            tried,
        }));
    }
    Ok(out)
}
