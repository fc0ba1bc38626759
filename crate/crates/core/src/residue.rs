//! The residue ring R_p = F_p[t]/(t^{p−1}) ≅ Z[ζ_p]/(p) via ζ ↦ 1 + t:
//! cyclotomic-unit images, the truncated logarithm, and r₀.

use crate::arith::{fp_rank, inverse_table, Fp, FpMatrix};
use crate::error::VanlabError;

/// Element of R_p: coefficients of t^0 … t^{p−2}, reduced mod p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElem {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl ResidueElem {
    pub fn zero(p: u64) -> Self {
        ResidueElem {
            p,
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    pub fn one(p: u64) -> Self {
        let mut e = Self::zero(p);
        e.coeffs[0] = 1;
        e
    }

    pub fn scalar(p: u64, c: u64) -> Self {
        let mut e = Self::zero(p);
        e.coeffs[0] = c % p;
        e
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<u64>) -> Self {
        assert_eq!(coeffs.len(), (p - 1) as usize);
        debug_assert!(coeffs.iter().all(|&c| c < p));
        ResidueElem { p, coeffs }
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    /// Principal unit: constant coefficient 1.
    pub fn is_principal_unit(&self) -> bool {
        self.coeffs[0] == 1
    }

    pub fn add(&self, other: &ResidueElem) -> ResidueElem {
        assert_eq!(self.p, other.p);
        let fp = Fp::new(self.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| fp.add(a, b))
            .collect();
        ResidueElem { p: self.p, coeffs }
    }

    pub fn sub(&self, other: &ResidueElem) -> ResidueElem {
        assert_eq!(self.p, other.p);
        let fp = Fp::new(self.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| fp.sub(a, b))
            .collect();
        ResidueElem { p: self.p, coeffs }
    }

    pub fn mul(&self, other: &ResidueElem) -> ResidueElem {
        assert_eq!(self.p, other.p);
        let fp = Fp::new(self.p);
        let n = self.coeffs.len();
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n - i).enumerate() {
                if b != 0 {
                    out[i + j] = fp.add(out[i + j], fp.mul(a, b));
                }
            }
        }
        ResidueElem {
            p: self.p,
            coeffs: out,
        }
    }

    /// Inverse of a unit, by the linear recurrence for a power-series
    /// reciprocal truncated at t^{p−1}.
    pub fn inv(&self) -> Result<ResidueElem, VanlabError> {
        if !self.is_unit() {
            return Err(VanlabError::NotUnit);
        }
        let fp = Fp::new(self.p);
        let n = self.coeffs.len();
        let c0 = fp.inv(self.coeffs[0])?;
        let mut w = vec![0u64; n];
        w[0] = c0;
        for j in 1..n {
            let mut s = 0u64;
            for i in 1..=j {
                if self.coeffs[i] != 0 {
                    s = fp.add(s, fp.mul(self.coeffs[i], w[j - i]));
                }
            }
            w[j] = fp.neg(fp.mul(c0, s));
        }
        Ok(ResidueElem {
            p: self.p,
            coeffs: w,
        })
    }

    pub fn pow(&self, mut e: u64) -> ResidueElem {
        let mut base = self.clone();
        let mut acc = ResidueElem::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Image of Σ c_i ζ^i in R_p under ζ ↦ 1 + t. Exponents are folded mod p
/// (ζ^p = 1), so vectors longer than p − 1 are accepted.
pub fn reduce_zeta_poly(p: u64, c: &[u64]) -> ResidueElem {
    let fp = Fp::new(p);
    let n = (p - 1) as usize;
    let mut folded = vec![0u64; p as usize];
    for (e, &v) in c.iter().enumerate() {
        let slot = e % p as usize;
        folded[slot] = fp.add(folded[slot], fp.reduce(v));
    }
    let mut out = vec![0u64; n];
    let mut pw = vec![0u64; n]; // (1+t)^e, incrementally
    pw[0] = 1;
    for &f in folded.iter() {
        if f != 0 {
            for j in 0..n {
                out[j] = fp.add(out[j], fp.mul(f, pw[j]));
            }
        }
        for j in (1..n).rev() {
            pw[j] = fp.add(pw[j], pw[j - 1]);
        }
    }
    ResidueElem { p, coeffs: out }
}

/// Split a unit u = c·v into its scalar part c ∈ F_p^* and principal part
/// v ≡ 1 mod t.
pub fn unit_decompose(u: &ResidueElem) -> Result<(u64, ResidueElem), VanlabError> {
    if !u.is_unit() {
        return Err(VanlabError::NotUnit);
    }
    let fp = Fp::new(u.p);
    let c = u.coeffs[0];
    let cinv = fp.inv(c)?;
    let coeffs = u.coeffs.iter().map(|&a| fp.mul(a, cinv)).collect();
    Ok((
        c,
        ResidueElem {
            p: u.p,
            coeffs,
        },
    ))
}

/// Truncated logarithm of a principal unit:
/// log v = Σ_{j=1}^{p−2} (−1)^{j+1} (v−1)^j / j, every denominator a unit
/// mod p. Computed as ∫ v′·v^{−1}, which agrees with the series on all
/// surviving degrees and needs only one inverse and one product.
pub fn truncated_log(v: &ResidueElem) -> ResidueElem {
    assert!(v.is_principal_unit(), "log requires v ≡ 1 mod t");
    let fp = Fp::new(v.p);
    let n = v.coeffs.len();
    let w = v.inv().expect("principal units are invertible");
    let mut deriv = vec![0u64; n];
    for j in 0..n - 1 {
        deriv[j] = fp.mul((j + 1) as u64, v.coeffs[j + 1]);
    }
    let h = ResidueElem {
        p: v.p,
        coeffs: deriv,
    }
    .mul(&w);
    let inv = inverse_table(&fp, n - 1);
    let mut out = vec![0u64; n];
    for j in 1..n {
        out[j] = fp.mul(h.coeffs[j - 1], inv[j]);
    }
    ResidueElem {
        p: v.p,
        coeffs: out,
    }
}

/// Truncated exponential Σ_{j=0}^{p−2} w^j / j! of an element ≡ 0 mod t;
/// inverse of `truncated_log` on principal units.
pub fn truncated_exp(w: &ResidueElem) -> ResidueElem {
    assert_eq!(w.coeffs[0], 0, "exp requires w ≡ 0 mod t");
    let fp = Fp::new(w.p);
    let n = w.coeffs.len();
    let mut acc = ResidueElem::one(w.p);
    let mut term = ResidueElem::one(w.p);
    let inv = inverse_table(&fp, n - 1);
    for j in 1..n {
        term = term.mul(w);
        let scale = inv[j];
        for (o, &t) in acc.coeffs.iter_mut().zip(&term.coeffs) {
            // term/j! built incrementally: divide by j at step j
            *o = fp.add(*o, fp.mul(t, scale));
        }
        term.coeffs = term.coeffs.iter().map(|&t| fp.mul(t, scale)).collect();
    }
    acc
}

/// Image of the cyclotomic unit ξ_a = ζ^{(1−a)/2}(ζ^a − 1)/(ζ − 1) in R_p,
/// for 2 ≤ a ≤ (p−1)/2. Real unit: constant coefficient a, t-coefficient 0
/// (asserted).
pub fn cyclotomic_unit(p: u64, a: u64) -> ResidueElem {
    assert!(a >= 2 && a <= (p - 1) / 2, "a out of range");
    let fp = Fp::new(p);
    let n = (p - 1) as usize;
    let inv = inverse_table(&fp, n.min(p as usize - 1));
    // ((1+t)^a − 1)/t = Σ_{j=0}^{a−1} C(a, j+1) t^j
    let mut g = vec![0u64; n];
    let mut binom = a % p; // C(a, 1)
    g[0] = binom;
    for j in 1..(a as usize).min(n) {
        binom = fp.mul(binom, fp.mul(fp.reduce(a - j as u64), inv[j + 1]));
        g[j] = binom;
    }
    // (1+t)^e with e = (1−a)/2 mod p
    let e = fp.mul(fp.sub(1 % p, a % p), inv[2]);
    let mut pe = vec![0u64; n];
    let mut c = 1u64; // C(e, 0)
    pe[0] = 1;
    for j in 1..n.min(e as usize + 1) {
        c = fp.mul(c, fp.mul(fp.sub(e, j as u64 - 1), inv[j]));
        pe[j] = c;
    }
    let xi = ResidueElem { p, coeffs: g }.mul(&ResidueElem { p, coeffs: pe });
    assert_eq!(xi.coeffs[0], a % p, "constant coefficient must be a");
    assert_eq!(xi.coeffs[1], 0, "real unit must have zero t-coefficient");
    xi
}

/// Relation matrix of the normalized cyclotomic units: row a−2 holds the
/// coefficients of t², …, t^{p−2} of log(ξ_a^{p−1}), a = 2 … (p−1)/2.
/// Raising to the (p−1)-st power lands every generator in {≡ 1 mod t²}
/// without changing ranks, so both the t⁰ and t¹ columns vanish (asserted).
pub fn unit_relation_matrix(p: u64) -> FpMatrix {
    let rows = if p >= 5 { ((p - 3) / 2) as usize } else { 0 };
    let cols = if p >= 5 { (p - 3) as usize } else { 0 };
    let mut m = FpMatrix::zero(rows, cols);
    let fp = Fp::new(p);
    for a in 2..=(p - 1) / 2 {
        let xi = cyclotomic_unit(p, a);
        let (c, v) = unit_decompose(&xi).expect("ξ_a is a unit");
        assert_eq!(c, a % p);
        let lg = truncated_log(&v);
        assert_eq!(lg.coeffs[0], 0);
        assert_eq!(lg.coeffs[1], 0, "normalized log must vanish at t^1");
        let row = (a - 2) as usize;
        for j in 0..cols {
            // log(ξ_a^{p−1}) = (p−1)·log(v) = −log(v) mod p
            m.entries[row * cols + j] = fp.neg(lg.coeffs[j + 2]);
        }
    }
    m
}

/// r₀ = (p−3)/2 − rank of the cyclotomic-unit relation matrix: the kernel
/// corank of the log-linearized map from units ≡ 1 mod p into U(R_p).
pub fn compute_r0(p: u64) -> u64 {
    if p == 3 {
        return 0;
    }
    let m = unit_relation_matrix(p);
    (p - 3) / 2 - fp_rank(&m, p) as u64
}

/// dim V = (p−3)/2 + r₀.
pub fn dim_v(p: u64) -> u64 {
    (p - 3) / 2 + compute_r0(p)
}
