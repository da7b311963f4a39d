//! Polarized lattices as models of abelian-variety fibers, their duals, and
//! the `Pic^d` torsor labels relating the two sides of the mirror pair.
//!
//! A fiber is `T = Lambda_R / Lambda` with `Lambda = Z^{2k}` and an integral
//! alternating nondegenerate pairing. Its dual lives on
//! `Lambda* = { v : pairing(v, Lambda) in Z }` with the induced form scaled
//! by `d_1 d_k` to be integral and primitive-compatible, so the dual of a
//! type `(d_1, ..., d_k)` polarization has type `(d_1 d_k / d_k, ..., d_1 d_k / d_1)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::TorusError;
use crate::hitchin::{prym_dim, CurveSetup, SpectralData};
use crate::linalg::QMatrix;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Converts an `i64` matrix.
pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Block-diagonal `d_i [[0, 1], [-1, 0]]`.
pub fn block_symplectic(divisors: &[BigInt]) -> IntMatrix {
    let n = 2 * divisors.len();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (b, d) in divisors.iter().enumerate() {
        m[2 * b][2 * b + 1] = d.clone();
        m[2 * b + 1][2 * b] = -d;
    }
    m
}

fn check_alternating(a: &IntMatrix) -> Result<(), TorusError> {
    let rows = a.len();
    if rows == 0 || rows % 2 == 1 || a.iter().any(|r| r.len() != rows) {
        return Err(TorusError::BadShape {
            rows,
            cols: a.first().map_or(0, Vec::len),
        });
    }
    for i in 0..rows {
        if !a[i][i].is_zero() {
            return Err(TorusError::NotAlternating { row: i, col: i });
        }
        for j in i + 1..rows {
            if a[i][j] != -&a[j][i] {
                return Err(TorusError::NotAlternating { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Result of the symplectic (Frobenius) reduction of an alternating form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingNormalForm {
    /// `d_1 | d_2 | ... | d_k`, all positive.
    pub divisors: Vec<BigInt>,
    /// Unimodular `P` with `P^T A P = block_symplectic(divisors)`.
    pub basis: IntMatrix,
}

struct Congruence {
    m: IntMatrix,
    p: IntMatrix,
}

impl Congruence {
    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        for row in self.m.iter_mut() {
            row.swap(i, j);
        }
        for row in self.p.iter_mut() {
            row.swap(i, j);
        }
    }

    /// `e_t += f e_s`.
    fn add(&mut self, t: usize, s: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        let n = self.m.len();
        for r in 0..n {
            let v = f * &self.m[r][s];
            self.m[r][t] += v;
        }
        for c in 0..n {
            let v = f * &self.m[s][c];
            self.m[t][c] += v;
        }
        for r in 0..n {
            let v = f * &self.p[r][s];
            self.p[r][t] += v;
        }
    }
}

/// Symplectic basis reduction over `Z`.
pub fn alternating_normal_form(a: &IntMatrix) -> Result<AlternatingNormalForm, TorusError> {
    check_alternating(a)?;
    let n = a.len();
    let mut st = Congruence {
        m: a.clone(),
        p: identity(n),
    };
    let mut divisors = Vec::with_capacity(n / 2);
    let mut s = 0;
    while s < n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in s..n {
                for j in i + 1..n {
                    let v = &st.m[i][j];
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < st.m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else {
                return Err(TorusError::Degenerate);
            };
            st.swap(s, i);
            let j = if j == s { i } else { j };
            st.swap(s + 1, j);
            if st.m[s][s + 1].is_negative() {
                st.swap(s, s + 1);
            }
            let p = st.m[s][s + 1].clone();

            let mut clean = true;
            for t in s + 2..n {
                let q = st.m[s][t].div_floor(&p);
                st.add(t, s + 1, &-q);
                let q2 = st.m[s + 1][t].div_floor(&p);
                st.add(t, s, &q2);
                if !st.m[s][t].is_zero() || !st.m[s + 1][t].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender = (s + 2..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .find(|&(u, v)| !st.m[u][v].is_multiple_of(&p));
            match offender {
                Some((u, _)) => st.add(s, u, &BigInt::one()),
                None => {
                    divisors.push(p);
                    break;
                }
            }
        }
        s += 2;
    }
    Ok(AlternatingNormalForm {
        divisors,
        basis: st.p,
    })
}

/// Smith normal form diagonal of an arbitrary square integer matrix, by
/// row and column operations that ignore any alternating structure.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::with_capacity(rows.min(cols));
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                diag.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) - t));
                return diag;
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &m[t][j];
                        m[i][j] -= v;
                    }
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

/// An integral lattice with an alternating nondegenerate polarization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolarizedLatticeTorus {
    pairing: IntMatrix,
}

impl PolarizedLatticeTorus {
    pub fn new(pairing: IntMatrix) -> Result<Self, TorusError> {
        alternating_normal_form(&pairing)?;
        Ok(Self { pairing })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, TorusError> {
        Self::new(int_matrix(rows))
    }

    /// Principal polarization on `Z^{2k}`.
    pub fn principal(k: usize) -> Self {
        Self::with_type(&vec![BigInt::one(); k])
    }

    /// Normal-form lattice of the given type. Panics on a non-positive divisor.
    pub fn with_type(divisors: &[BigInt]) -> Self {
        assert!(divisors.iter().all(|d| d.is_positive()));
        Self {
            pairing: block_symplectic(divisors),
        }
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn rank(&self) -> usize {
        self.pairing.len()
    }

    /// Complex dimension of the torus.
    pub fn dim(&self) -> usize {
        self.rank() / 2
    }

    pub fn normal_form(&self) -> AlternatingNormalForm {
        alternating_normal_form(&self.pairing).expect("validated at construction")
    }

    /// Polarization type `(d_1, ..., d_k)`.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.normal_form().divisors
    }

    /// Canonical representative of the isomorphism class.
    pub fn canonical_form(&self) -> IntMatrix {
        block_symplectic(&self.elementary_divisors())
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// `[Lambda* : Lambda] = |det pairing|`.
    pub fn dual_index(&self) -> BigInt {
        self.elementary_divisors().iter().map(|d| d * d).product()
    }
}

impl Serialize for PolarizedLatticeTorus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = self
            .pairing
            .iter()
            .map(|r| r.iter().map(i64::try_from).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| serde::ser::Error::custom("pairing entry exceeds 64 bits"))?;
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolarizedLatticeTorus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        Self::from_i64(&rows).map_err(serde::de::Error::custom)
    }
}

/// Type of the dual polarization: `d_1 d_k / d_i` in ascending order.
pub fn dual_type(divisors: &[BigInt]) -> Vec<BigInt> {
    let (Some(first), Some(last)) = (divisors.first(), divisors.last()) else {
        return Vec::new();
    };
    let scale = first * last;
    divisors.iter().rev().map(|d| &scale / d).collect()
}

/// Dual polarized lattice, via the inverse form on `Lambda*` cleared by `d_1 d_k`.
/// The result is expressed in the basis `A^{-T} e_i` of `Lambda*`.
pub fn dualize(t: &PolarizedLatticeTorus) -> PolarizedLatticeTorus {
    let divisors = t.elementary_divisors();
    let scale = &divisors[0] * &divisors[divisors.len() - 1];
    let a = QMatrix::from_rows(
        t.pairing
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| num_rational::BigRational::from_integer(v.clone()))
                    .collect()
            })
            .collect(),
    )
    .expect("square pairing");
    let inv = a.inverse().expect("nondegenerate pairing");
    let n = t.rank();
    let pairing: IntMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v =
                        -(&inv[(i, j)] * num_rational::BigRational::from_integer(scale.clone()));
                    assert!(v.is_integer(), "d_1 d_k clears the inverse form");
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    PolarizedLatticeTorus::new(pairing).expect("dual of a polarization is a polarization")
}

/// Character torus `Hom(pi_1(T), U(1))` in symplectic coordinates: the dual
/// type assembled directly from the normal form of `T`, origin at zero.
pub fn syz_dual_fiber(t: &PolarizedLatticeTorus) -> PolarizedLatticeTorus {
    PolarizedLatticeTorus::with_type(&dual_type(&t.elementary_divisors()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "PGL")]
    Pgl,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Self::Sl => Self::Pgl,
            Self::Pgl => Self::Sl,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sl => "SL",
            Self::Pgl => "PGL",
        })
    }
}

/// A degree-`degree` torsor over `base`, on one side of the mirror pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsorLabel {
    pub side: Side,
    pub degree: i64,
    pub base: PolarizedLatticeTorus,
}

impl TorsorLabel {
    pub fn new(side: Side, degree: i64, base: PolarizedLatticeTorus) -> Self {
        Self { side, degree, base }
    }

    /// The Hitchin fibration has a Lagrangian section in degree 0.
    pub fn has_lagrangian_section(&self) -> bool {
        self.degree == 0
    }
}

/// `Pic^d` of the fiber `label`: the degree-`d` torsor over the dual on the
/// other side. The degree of `label` itself plays no role.
pub fn pic_torsor(label: &TorsorLabel, d: i64) -> TorsorLabel {
    TorsorLabel {
        side: label.side.flip(),
        degree: d,
        base: dualize(&label.base),
    }
}

/// Model SL fiber of dimension `prym_dim(spectral)` with principal
/// polarization at degree `c`, and its dual PGL fiber at degree `d`.
pub fn mirror_fiber_pair(
    setup: &CurveSetup,
    spectral: &SpectralData,
) -> (TorsorLabel, TorsorLabel) {
    let k = prym_dim(spectral) as usize;
    let sl = TorsorLabel::new(Side::Sl, setup.c, PolarizedLatticeTorus::principal(k));
    let pgl = pic_torsor(&sl, setup.d);
    debug_assert_eq!(sl.base.dim(), pgl.base.dim());
    (sl, pgl)
}

/// Random lattice of rank `2k` with `1 <= k <= max_k`: a random divisor chain
/// moved by a random unimodular change of basis.
pub fn random_polarized_lattice<R: Rng + ?Sized>(
    rng: &mut R,
    max_k: usize,
) -> PolarizedLatticeTorus {
    let k = rng.gen_range(1..=max_k);
    let mut divisors = Vec::with_capacity(k);
    let mut d = BigInt::from(rng.gen_range(1i64..=2));
    for _ in 0..k {
        divisors.push(d.clone());
        d *= rng.gen_range(1i64..=3);
    }
    let n = 2 * k;
    let mut p = identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let f = BigInt::from(rng.gen_range(-2i64..=2));
        for row in p.iter_mut() {
            let v = &f * &row[j];
            row[i] += v;
        }
    }
    let a = mat_mul(&mat_mul(&transpose(&p), &block_symplectic(&divisors)), &p);
    PolarizedLatticeTorus::new(a).expect("unimodular congruence keeps the form nondegenerate")
}
