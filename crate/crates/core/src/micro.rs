//! Exact cyclotomic-integer arithmetic at p ∈ {3, 5, 7}: brute-force
//! verification of the unit-quotient statement V = U(R_p)/E₁, the norm
//! compatibility j₂ = j₁∘N, and the norm-additivity congruence — the only
//! module that touches Z[ζ_{p²}].

use crate::error::VanlabError;
use crate::report::PicardStructure;
use crate::residue::{cyclotomic_unit, reduce_zeta_poly, ResidueElem};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::HashSet;

pub const MICRO_PRIMES: [u64; 3] = [3, 5, 7];

pub fn ensure_micro_prime(p: u64) -> Result<(), VanlabError> {
    if MICRO_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(VanlabError::UnsupportedPrime(p))
    }
}

/// Exact cyclotomic integer: coefficients over the power basis of ζ_{p^level}
/// modulo the p^level-th cyclotomic polynomial, length φ(p^level).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycInt {
    pub p: u64,
    pub level: u8,
    pub coeffs: Vec<BigInt>,
}

impl CycInt {
    fn degree(p: u64, level: u8) -> usize {
        match level {
            1 => (p - 1) as usize,
            2 => (p * p - p) as usize,
            _ => panic!("level must be 1 or 2"),
        }
    }

    fn modulus(p: u64, level: u8) -> usize {
        match level {
            1 => p as usize,
            2 => (p * p) as usize,
            _ => panic!("level must be 1 or 2"),
        }
    }

    pub fn zero(p: u64, level: u8) -> Self {
        CycInt {
            p,
            level,
            coeffs: vec![BigInt::zero(); Self::degree(p, level)],
        }
    }

    pub fn integer(p: u64, level: u8, n: i64) -> Self {
        let mut z = Self::zero(p, level);
        z.coeffs[0] = BigInt::from(n);
        z
    }

    pub fn one(p: u64, level: u8) -> Self {
        Self::integer(p, level, 1)
    }

    /// ζ_{p^level}^e, reduced.
    pub fn zeta_pow(p: u64, level: u8, e: usize) -> Self {
        let m = Self::modulus(p, level);
        let mut raw = vec![BigInt::zero(); m];
        raw[e % m] = BigInt::one();
        Self::reduce(p, level, raw)
    }

    /// Reduce a coefficient vector over exponents 0..p^level modulo the
    /// cyclotomic polynomial: exponents fold mod p^level, then every
    /// exponent ≥ φ(p^level) is rewritten by
    /// ζ^{φ + e} = −Σ_{j=0}^{p−2} ζ^{e + j·p^{level−1}}.
    pub fn reduce(p: u64, level: u8, raw: Vec<BigInt>) -> Self {
        let m = Self::modulus(p, level);
        let n = Self::degree(p, level);
        let step = m / p as usize; // p^{level−1}
        let mut folded = vec![BigInt::zero(); m];
        for (e, c) in raw.into_iter().enumerate() {
            if !c.is_zero() {
                folded[e % m] += c;
            }
        }
        for e in (n..m).rev() {
            if folded[e].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut folded[e]);
            let base = e - n;
            for j in 0..(p - 1) as usize {
                folded[base + j * step] -= &c;
            }
        }
        folded.truncate(n);
        CycInt {
            p,
            level,
            coeffs: folded,
        }
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert!(self.p == other.p && self.level == other.level);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycInt {
            p: self.p,
            level: self.level,
            coeffs,
        }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert!(self.p == other.p && self.level == other.level);
        let n = self.coeffs.len();
        let mut raw = vec![BigInt::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.p, self.level, raw)
    }

    /// σ_u: ζ ↦ ζ^u for gcd(u, p^level) = 1.
    pub fn galois_apply(&self, u: usize) -> CycInt {
        let m = Self::modulus(self.p, self.level);
        assert!(u % self.p as usize != 0, "u must be coprime to p");
        let mut raw = vec![BigInt::zero(); m];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(e * u) % m] += c;
            }
        }
        Self::reduce(self.p, self.level, raw)
    }
}

/// Norm from level 2 to level 1: Π_{c=0}^{p−1} σ_{1+cp}(a). The product's
/// support must land on exponents divisible by p (the subfield condition);
/// a violation signals an arithmetic bug, not bad input.
pub fn norm_k2_k1(a: &CycInt) -> Result<CycInt, VanlabError> {
    assert_eq!(a.level, 2);
    let p = a.p as usize;
    let mut acc = a.clone();
    for c in 1..p {
        acc = acc.mul(&a.galois_apply(1 + c * p));
    }
    for (e, coeff) in acc.coeffs.iter().enumerate() {
        if e % p != 0 && !coeff.is_zero() {
            return Err(VanlabError::NotInSubfield);
        }
    }
    let coeffs = (0..p - 1).map(|j| acc.coeffs[j * p].clone()).collect();
    Ok(CycInt {
        p: a.p,
        level: 1,
        coeffs,
    })
}

/// Reduction Z[ζ₁] → R_p: coefficients mod p, then ζ ↦ 1 + t.
pub fn j1(a: &CycInt) -> ResidueElem {
    assert_eq!(a.level, 1);
    let p = a.p;
    let c: Vec<u64> = a
        .coeffs
        .iter()
        .map(|b| {
            let r = b % p;
            let r = if r.is_negative() { r + p } else { r };
            u64::try_from(r).expect("reduced residue fits u64")
        })
        .collect();
    reduce_zeta_poly(p, &c)
}

/// j₂ = j₁ ∘ N, the level-2 reduction defined through the norm.
pub fn j2(a: &CycInt) -> Result<ResidueElem, VanlabError> {
    Ok(j1(&norm_k2_k1(a)?))
}

/// Image of the global units in U(R_p): the subgroup generated by j₁(−1),
/// j₁(ζ), and the cyclotomic units ξ_a, enumerated by breadth-first closure.
/// Valid generating set because h(Q(ζ_p)) = 1 for p ∈ {3, 5, 7}.
#[derive(Debug)]
pub struct UnitImage {
    pub p: u64,
    pub generators: Vec<(String, ResidueElem)>,
    pub elements: Vec<ResidueElem>,
    members: HashSet<Vec<u64>>,
}

impl UnitImage {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: &ResidueElem) -> bool {
        self.members.contains(&e.coeffs)
    }
}

pub fn unit_image_subgroup(p: u64) -> Result<UnitImage, VanlabError> {
    ensure_micro_prime(p)?;
    let mut generators = vec![
        (
            "-1".to_string(),
            j1(&CycInt::integer(p, 1, -1)),
        ),
        ("zeta".to_string(), j1(&CycInt::zeta_pow(p, 1, 1))),
    ];
    for a in 2..=(p - 1) / 2 {
        generators.push((format!("xi_{a}"), cyclotomic_unit(p, a)));
    }
    let one = ResidueElem::one(p);
    let mut members = HashSet::new();
    members.insert(one.coeffs.clone());
    let mut elements = vec![one.clone()];
    let mut frontier = vec![one];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for (_, g) in &generators {
                let prod = e.mul(g);
                if members.insert(prod.coeffs.clone()) {
                    elements.push(prod.clone());
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    Ok(UnitImage {
        p,
        generators,
        elements,
        members,
    })
}

/// Quotient U(R_p)/E₁ as an abelian group. Enumerates all of U(R_p),
/// asserts |U| = (p−1)p^{p−2}, checks every u^p lands in the image (so the
/// quotient is elementary abelian), and returns its p-rank.
pub fn micro_v(p: u64) -> Result<PicardStructure, VanlabError> {
    ensure_micro_prime(p)?;
    let image = unit_image_subgroup(p)?;
    let n = (p - 1) as usize;
    let expected_units = (p - 1) * p.pow(p as u32 - 2);
    let mut count = 0u64;
    let mut coeffs = vec![0u64; n];
    coeffs[0] = 1;
    loop {
        let u = ResidueElem::from_coeffs(p, coeffs.clone());
        count += 1;
        assert!(
            image.contains(&u.pow(p)),
            "quotient must be elementary abelian: u^p outside image"
        );
        // odometer over unit coefficient vectors: constant in [1,p), rest in [0,p)
        let mut i = n - 1;
        loop {
            coeffs[i] += 1;
            let limit = p;
            if coeffs[i] < limit {
                break;
            }
            coeffs[i] = if i == 0 { 1 } else { 0 };
            if i == 0 {
                break;
            }
            i -= 1;
        }
        if coeffs[0] == 1 && coeffs.iter().skip(1).all(|&c| c == 0) {
            break;
        }
    }
    assert_eq!(count, expected_units, "|U(R_p)| must be (p-1)p^(p-2)");
    assert_eq!(
        count % image.order() as u64,
        0,
        "image order must divide |U|"
    );
    let mut index = count / image.order() as u64;
    let mut rank = 0u64;
    while index > 1 {
        assert_eq!(index % p, 0, "quotient order must be a power of p");
        index /= p;
        rank += 1;
    }
    Ok(PicardStructure {
        elementary_rank: rank,
        cyclic_factors: Vec::new(),
        unpromoted: Vec::new(),
    })
}

/// Level-2 unit generators of E₂ — −1, ζ₂, and the cyclotomic units
/// (ζ₂^a − 1)/(ζ₂ − 1) for a coprime to p — must all land inside the E₁
/// image; this is the collapse "U/(E₁×E₂) = U/E₁".
pub fn e2_absorption_test(p: u64) -> Result<bool, VanlabError> {
    ensure_micro_prime(p)?;
    let image = unit_image_subgroup(p)?;
    let minus_one = j2(&CycInt::integer(p, 2, -1))?;
    let zeta2 = j2(&CycInt::zeta_pow(p, 2, 1))?;
    if !image.contains(&minus_one) || !image.contains(&zeta2) {
        return Ok(false);
    }
    let half = (p * p / 2) as usize;
    for a in 2..=half {
        if a % p as usize == 0 {
            continue;
        }
        // (ζ₂^a − 1)/(ζ₂ − 1) = 1 + ζ₂ + … + ζ₂^{a−1}
        let mut raw = vec![BigInt::zero(); (p * p) as usize];
        for slot in raw.iter_mut().take(a) {
            *slot = BigInt::one();
        }
        let lambda = CycInt::reduce(p, 2, raw);
        if !image.contains(&j2(&lambda)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random-pair test of the norm congruence N(a+b) ≡ N(a) + N(b) mod p,
/// phrased through j₂: additivity j₂(a+b) = j₂(a) + j₂(b), plus
/// multiplicativity as an arithmetic guard. Deterministically seeded.
pub fn j2_additivity_test(p: u64, trials: usize) -> Result<bool, VanlabError> {
    ensure_micro_prime(p)?;
    let n = CycInt::degree(p, 2);
    let mut rng = StdRng::seed_from_u64(0xC1C1_0000 + p);
    let random_cyc = |rng: &mut StdRng| {
        let coeffs = (0..n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
        CycInt {
            p,
            level: 2,
            coeffs,
        }
    };
    for _ in 0..trials {
        let a = random_cyc(&mut rng);
        let b = random_cyc(&mut rng);
        let ja = j2(&a)?;
        let jb = j2(&b)?;
        if j2(&a.add(&b))? != ja.add(&jb) {
            return Ok(false);
        }
        if j2(&a.mul(&b))? != ja.mul(&jb) {
            return Ok(false);
        }
    }
    Ok(true)
}
