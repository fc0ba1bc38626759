//! Per-prime invariant reports: the R±/r± numbers, S₁ and Picard structure,
//! identity cross-checks, and the aggregate report the CLI serializes.

use crate::arith::ensure_odd_prime;
use crate::bernoulli::{eigenspace_exponent, irregular_indices, DEFAULT_PRECISION_CAP};
use crate::error::VanlabError;
use crate::residue::compute_r0;
use crate::vandiver::{check_vandiver_for, VandiverVerdict};
use serde::{Deserialize, Serialize};

/// Generator counts of the class-group pieces. R and R± count generators of
/// S₁ and its eigenspaces; r and r± count the subgroup of classes whose p-th
/// power has a unit-congruent generator; r0 is the independently computed
/// unit-side invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RNumbers {
    #[serde(rename = "R")]
    pub cap_r: u64,
    #[serde(rename = "r")]
    pub low_r: u64,
    #[serde(rename = "R_plus")]
    pub cap_r_plus: u64,
    #[serde(rename = "R_minus")]
    pub cap_r_minus: u64,
    pub r_plus: u64,
    pub r_minus: u64,
    pub r0: u64,
}

/// Shape of a finite abelian p-group: an elementary-abelian part of the
/// given rank plus one cyclic factor of order p^n per listed exponent n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardStructure {
    pub elementary_rank: u64,
    /// Exponents n of the cyclic factors Z/p^n, sorted descending.
    pub cyclic_factors: Vec<u32>,
    /// Factors kept at their un-promoted exponent; empty whenever r = 0,
    /// which holds on every prime this tool models.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub unpromoted: Vec<u32>,
}

/// One evaluated identity: `detail` explains a violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularPairEntry {
    pub k: u64,
    pub e: u32,
}

/// Everything the tool computes for one prime. Field order matches the
/// serialized schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub p: u64,
    pub index_of_irregularity: u64,
    pub irregular_pairs: Vec<IrregularPairEntry>,
    pub r_numbers: RNumbers,
    #[serde(rename = "dim_V")]
    pub dim_v: u64,
    pub s1_factors: Vec<u32>,
    pub b_p: PicardStructure,
    pub s_p_image_dim: u64,
    /// Level-p² class data is outside desk scale and deliberately omitted.
    pub cl_level2: String,
    pub assumptions: Vec<String>,
    pub checks: Vec<IdentityCheck>,
    pub vandiver: Vec<VandiverVerdict>,
}

impl InvariantReport {
    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// S₁ minus-part shape: one cyclic factor p^{e_k} per irregular pair,
/// sorted by k.
pub fn minus_structure(p: u64, precision_cap: u32) -> Result<Vec<u32>, VanlabError> {
    irregular_indices(p)
        .iter()
        .map(|&k| eigenspace_exponent(p, k, precision_cap))
        .collect()
}

/// The R±/r± numbers. The model takes r₊ = r₋ = R₊ = 0 and R₋ = i(p); r0
/// comes from the independent unit-side computation and is never repaired
/// to match — a mismatch shows up as a failing check instead.
pub fn r_numbers(p: u64) -> RNumbers {
    let r0 = compute_r0(p);
    let i = crate::bernoulli::index_of_irregularity(p);
    RNumbers {
        cap_r: i,
        low_r: 0,
        cap_r_plus: 0,
        cap_r_minus: i,
        r_plus: 0,
        r_minus: 0,
        r0,
    }
}

/// B_p structure: elementary part of rank (p−3)/2 plus one promoted factor
/// p^{e_k + 1} per irregular pair (with r = 0, every generator is promoted).
pub fn b_p_structure(p: u64, precision_cap: u32) -> Result<PicardStructure, VanlabError> {
    let mut cyclic: Vec<u32> = minus_structure(p, precision_cap)?
        .iter()
        .map(|&e| e + 1)
        .collect();
    cyclic.sort_unstable_by(|a, b| b.cmp(a));
    Ok(PicardStructure {
        elementary_rank: (p - 3) / 2,
        cyclic_factors: cyclic,
        unpromoted: Vec::new(),
    })
}

fn check(name: &str, pass: bool, detail: String) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        pass,
        detail: if pass { None } else { Some(detail) },
    }
}

/// Evaluate the identities linking the computed numbers. The genuinely
/// independent content is `Rm-rm=r0` (Bernoulli oracle vs unit-side rank);
/// the rest validates internal bookkeeping.
pub fn evaluate_checks(
    p: u64,
    rn: &RNumbers,
    dim_v: u64,
    s1: &[u32],
    bp: &PicardStructure,
) -> Vec<IdentityCheck> {
    let sum_e: u64 = s1.iter().map(|&e| e as u64).sum();
    let log_bp = bp.elementary_rank + bp.cyclic_factors.iter().map(|&e| e as u64).sum::<u64>();
    vec![
        check(
            "R-r=r0",
            rn.cap_r >= rn.low_r && rn.cap_r - rn.low_r == rn.r0,
            format!("R={} r={} r0={}", rn.cap_r, rn.low_r, rn.r0),
        ),
        check(
            "Rm-rm<=r0",
            rn.cap_r_minus >= rn.r_minus && rn.cap_r_minus - rn.r_minus <= rn.r0,
            format!("R_minus={} r_minus={} r0={}", rn.cap_r_minus, rn.r_minus, rn.r0),
        ),
        check(
            "Rm-rm=r0",
            rn.cap_r_minus >= rn.r_minus && rn.cap_r_minus - rn.r_minus == rn.r0,
            format!("R_minus={} r_minus={} r0={}", rn.cap_r_minus, rn.r_minus, rn.r0),
        ),
        check(
            "rm=rp=Rp",
            rn.r_minus == rn.r_plus && rn.r_plus == rn.cap_r_plus,
            format!("r_minus={} r_plus={} R_plus={}", rn.r_minus, rn.r_plus, rn.cap_r_plus),
        ),
        check(
            "dimV=(p-3)/2+r0",
            dim_v == (p - 3) / 2 + rn.r0,
            format!("dim_V={} (p-3)/2={} r0={}", dim_v, (p - 3) / 2, rn.r0),
        ),
        check(
            "logp|Bp|=dimV+sum_e",
            log_bp == dim_v + sum_e,
            format!("log_p|B_p|={log_bp} dim_V={dim_v} sum_e={sum_e}"),
        ),
    ]
}

/// Identity checks for p, recomputed from scratch.
pub fn identity_checks(p: u64) -> Result<Vec<IdentityCheck>, VanlabError> {
    let rn = r_numbers(p);
    let dim_v = (p - 3) / 2 + rn.r0;
    let s1 = minus_structure(p, DEFAULT_PRECISION_CAP)?;
    let bp = b_p_structure(p, DEFAULT_PRECISION_CAP)?;
    Ok(evaluate_checks(p, &rn, dim_v, &s1, &bp))
}

/// Fully populated report for one odd prime; deterministic for fixed p.
pub fn invariant_report(
    p: u64,
    max_aux: usize,
    precision_cap: u32,
) -> Result<InvariantReport, VanlabError> {
    ensure_odd_prime(p)?;
    let ks = irregular_indices(p);
    let exponents: Vec<u32> = ks
        .iter()
        .map(|&k| eigenspace_exponent(p, k, precision_cap))
        .collect::<Result<_, _>>()?;
    let r0 = compute_r0(p);
    let i = ks.len() as u64;
    let rn = RNumbers {
        cap_r: i,
        low_r: 0,
        cap_r_plus: 0,
        cap_r_minus: i,
        r_plus: 0,
        r_minus: 0,
        r0,
    };
    let dim_v = (p - 3) / 2 + r0;
    let mut cyclic: Vec<u32> = exponents.iter().map(|&e| e + 1).collect();
    cyclic.sort_unstable_by(|a, b| b.cmp(a));
    let bp = PicardStructure {
        elementary_rank: (p - 3) / 2,
        cyclic_factors: cyclic,
        unpromoted: Vec::new(),
    };
    let checks = evaluate_checks(p, &rn, dim_v, &exponents, &bp);
    let vandiver = check_vandiver_for(p, &ks, max_aux)?;
    Ok(InvariantReport {
        p,
        index_of_irregularity: i,
        irregular_pairs: ks
            .iter()
            .zip(&exponents)
            .map(|(&k, &e)| IrregularPairEntry { k, e })
            .collect(),
        r_numbers: rn,
        dim_v,
        s1_factors: exponents,
        b_p: bp,
        s_p_image_dim: r0,
        cl_level2: "omitted".to_string(),
        assumptions: vec!["s1_eigenspace_cyclicity".to_string()],
        checks,
        vandiver,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vandiver::VandiverStatus;

    #[test]
    fn minus_structure_examples() {
        assert_eq!(
            minus_structure(13, DEFAULT_PRECISION_CAP).unwrap(),
            Vec::<u32>::new()
        );
        assert_eq!(minus_structure(37, DEFAULT_PRECISION_CAP).unwrap(), vec![1]);
        assert_eq!(minus_structure(157, DEFAULT_PRECISION_CAP).unwrap(), vec![1, 1]);
    }

    #[test]
    fn r_numbers_examples() {
        let z = r_numbers(13);
        assert_eq!(
            (z.cap_r, z.low_r, z.cap_r_plus, z.cap_r_minus, z.r_plus, z.r_minus, z.r0),
            (0, 0, 0, 0, 0, 0, 0)
        );
        let v = r_numbers(37);
        assert_eq!((v.cap_r, v.cap_r_minus, v.r0), (1, 1, 1));
        assert_eq!((v.low_r, v.cap_r_plus, v.r_plus, v.r_minus), (0, 0, 0, 0));
        let w = r_numbers(691);
        assert_eq!((w.cap_r, w.cap_r_minus, w.r0), (2, 2, 2));
    }

    #[test]
    fn b_p_structure_examples() {
        let b13 = b_p_structure(13, DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!((b13.elementary_rank, b13.cyclic_factors.clone()), (5, vec![]));
        let b37 = b_p_structure(37, DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!((b37.elementary_rank, b37.cyclic_factors.clone()), (17, vec![2]));
        let b157 = b_p_structure(157, DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!(
            (b157.elementary_rank, b157.cyclic_factors.clone()),
            (77, vec![2, 2])
        );
    }

    #[test]
    fn identity_checks_pass_for_known_primes() {
        for p in [3u64, 5, 13, 37, 157] {
            let checks = identity_checks(p).unwrap();
            assert_eq!(checks.len(), 6);
            assert!(checks.iter().all(|c| c.pass), "p={p}");
        }
    }

    #[test]
    fn report_for_37() {
        let r = invariant_report(37, 10, DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!(r.dim_v, 18);
        assert_eq!(r.s_p_image_dim, 1);
        assert_eq!(r.b_p.elementary_rank, 17);
        assert_eq!(r.b_p.cyclic_factors, vec![2]);
        assert_eq!(r.cl_level2, "omitted");
        assert!(r.checks_pass());
        assert_eq!(r.vandiver.len(), 1);
        assert_eq!(r.vandiver[0].status, VandiverStatus::Witnessed);
        assert_eq!(r.vandiver[0].q, Some(149));
    }

    #[test]
    fn degenerate_reports() {
        let r3 = invariant_report(3, 10, DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!(r3.dim_v, 0);
        assert!(r3.irregular_pairs.is_empty());
        assert!(r3.checks_pass());
        let r5 = invariant_report(5, 10, DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!(r5.dim_v, 1);
        assert_eq!(r5.r_numbers.r0, 0);
    }

    #[test]
    fn report_rejects_non_odd_primes() {
        assert_eq!(
            invariant_report(4, 10, DEFAULT_PRECISION_CAP),
            Err(VanlabError::NotOddPrime(4))
        );
        assert_eq!(
            invariant_report(2, 10, DEFAULT_PRECISION_CAP),
            Err(VanlabError::NotOddPrime(2))
        );
    }

    #[test]
    fn json_schema_field_names() {
        let r = invariant_report(37, 10, DEFAULT_PRECISION_CAP).unwrap();
        let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        for key in [
            "p",
            "index_of_irregularity",
            "irregular_pairs",
            "r_numbers",
            "dim_V",
            "s1_factors",
            "b_p",
            "s_p_image_dim",
            "cl_level2",
            "checks",
            "vandiver",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let rn = &v["r_numbers"];
        for key in ["R", "r", "R_plus", "R_minus", "r_plus", "r_minus", "r0"] {
            assert!(rn.get(key).is_some(), "missing r_numbers.{key}");
        }
        assert_eq!(v["vandiver"][0]["k"], 32);
        assert_eq!(v["vandiver"][0]["status"], "witnessed");
        assert_eq!(v["vandiver"][0]["q"], 149);
        assert_eq!(v["checks"][0]["pass"], true);
    }

    #[test]
    fn report_round_trips_through_json() {
        for p in [3u64, 13, 37, 157] {
            let r = invariant_report(p, 10, DEFAULT_PRECISION_CAP).unwrap();
            let s = serde_json::to_string(&r).unwrap();
            let back: InvariantReport = serde_json::from_str(&s).unwrap();
            assert_eq!(back, r, "p={p}");
        }
    }
}
