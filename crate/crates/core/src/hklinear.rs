//! Flat hyperkähler models `H^k` and exact checks on linear subspaces.
//!
//! Forms are matrices: `omega_i(u, v) = metric(J_i u, v) = u^T (J_i^T G) v`.
//! The complex forms are cyclic, `omega^c_1 = omega_2 + i omega_3`,
//! `omega^c_2 = omega_3 + i omega_1`, `omega^c_3 = omega_1 + i omega_2`, and
//! `Omega_1 = (omega^c_1)^k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::HkError;
use crate::linalg::{format_rational, parse_rational, pfaffian, QComplex, QMatrix, Rational};

/// One of the three complex structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    I = 1,
    J = 2,
    K = 3,
}

impl Structure {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Self::I),
            2 => Some(Self::J),
            3 => Some(Self::K),
            _ => None,
        }
    }

    fn idx(self) -> usize {
        self as usize - 1
    }

    /// `(a, b)` with `omega^c_self = omega_a + i omega_b`.
    pub fn complex_parts(self) -> (Structure, Structure) {
        match self {
            Self::I => (Self::J, Self::K),
            Self::J => (Self::K, Self::I),
            Self::K => (Self::I, Self::J),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperkahlerModel {
    k: usize,
    j: [QMatrix; 3],
    metric: QMatrix,
}

impl HyperkahlerModel {
    /// Checks `J_i^2 = -1`, the quaternion relations, symmetry and positivity
    /// of the metric, and that each `J_i` is an isometry.
    pub fn new(
        k: usize,
        j1: QMatrix,
        j2: QMatrix,
        j3: QMatrix,
        metric: QMatrix,
    ) -> Result<Self, HkError> {
        if k == 0 {
            return Err(HkError::ZeroDimension);
        }
        let dim = 4 * k;
        for m in [&j1, &j2, &j3, &metric] {
            if m.rows() != dim || m.cols() != dim {
                return Err(HkError::DimensionMismatch {
                    expected: format!("{dim}x{dim} matrices"),
                    got: format!("{}x{}", m.rows(), m.cols()),
                });
            }
        }
        let minus_id = -QMatrix::identity(dim);
        if [&j1, &j2, &j3].iter().any(|j| (*j * *j) != minus_id) {
            return Err(HkError::InvalidModel("J_i^2 = -1"));
        }
        if &j1 * &j2 != j3 || &j2 * &j3 != j1 || &j3 * &j1 != j2 {
            return Err(HkError::InvalidModel(
                "the quaternion relations J1 J2 = J3 (cyclic)",
            ));
        }
        if !metric.is_symmetric() || !is_positive_definite(&metric) {
            return Err(HkError::InvalidModel("metric symmetry and positivity"));
        }
        for j in [&j1, &j2, &j3] {
            if &(&j.transpose() * &metric) * j != metric {
                return Err(HkError::InvalidModel("J_i^T G J_i = G"));
            }
        }
        Ok(Self {
            k,
            j: [j1, j2, j3],
            metric,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn real_dim(&self) -> usize {
        4 * self.k
    }

    pub fn complex_structure(&self, s: Structure) -> &QMatrix {
        &self.j[s.idx()]
    }

    pub fn metric(&self) -> &QMatrix {
        &self.metric
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "j1": matrix_json(&self.j[0]),
            "j2": matrix_json(&self.j[1]),
            "j3": matrix_json(&self.j[2]),
            "metric": matrix_json(&self.metric),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, HkError> {
        let k = v["k"]
            .as_u64()
            .ok_or_else(|| HkError::ParseRational("k".into()))? as usize;
        let get = |key: &str| matrix_from_json(&v[key]);
        Self::new(k, get("j1")?, get("j2")?, get("j3")?, get("metric")?)
    }
}

/// Sylvester's criterion over `Q`.
fn is_positive_definite(m: &QMatrix) -> bool {
    let n = m.rows();
    (1..=n).all(|size| {
        let rows: Vec<Vec<Rational>> = (0..size)
            .map(|i| (0..size).map(|j| m[(i, j)].clone()).collect())
            .collect();
        QMatrix::from_rows(rows)
            .map(|minor| minor.determinant() > Rational::zero())
            .unwrap_or(false)
    })
}

/// Left multiplication by a unit quaternion on one block `(1, i, j, k)`.
fn quaternion_left(which: Structure) -> [[i64; 4]; 4] {
    // Columns are images of 1, i, j, k.
    match which {
        // i*1 = i, i*i = -1, i*j = k, i*k = -j
        Structure::I => [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        // j*1 = j, j*i = -k, j*j = -1, j*k = i
        Structure::J => [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
        // k*1 = k, k*i = j, k*j = -i, k*k = -1
        Structure::K => [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    }
}

fn block_diag(block: &[[i64; 4]; 4], k: usize) -> QMatrix {
    let mut m = QMatrix::zeros(4 * k, 4 * k);
    for b in 0..k {
        for (r, row) in block.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m[(4 * b + r, 4 * b + c)] = Rational::from_integer(BigInt::from(v));
            }
        }
    }
    m
}

/// `H^k` with the identity metric and `J_1, J_2, J_3` left multiplication by
/// `i, j, k` on each quaternionic coordinate `(1, i, j, k)`.
pub fn standard_model(k: usize) -> Result<HyperkahlerModel, HkError> {
    HyperkahlerModel::new(
        k,
        block_diag(&quaternion_left(Structure::I), k),
        block_diag(&quaternion_left(Structure::J), k),
        block_diag(&quaternion_left(Structure::K), k),
        QMatrix::identity(4 * k),
    )
}

/// Matrix of `omega_i`.
pub fn kahler_form(model: &HyperkahlerModel, s: Structure) -> QMatrix {
    &model.complex_structure(s).transpose() * &model.metric
}

/// `(re, im)` matrices of `omega^c_s`.
pub fn complex_symplectic_form(model: &HyperkahlerModel, s: Structure) -> (QMatrix, QMatrix) {
    let (a, b) = s.complex_parts();
    (kahler_form(model, a), kahler_form(model, b))
}

/// Whether `omega^c_s(J_s u, v) = i omega^c_s(u, v)` for all `u, v`.
pub fn complex_form_is_type_20(model: &HyperkahlerModel, s: Structure) -> bool {
    let (re, im) = complex_symplectic_form(model, s);
    let jt = model.complex_structure(s).transpose();
    // i (re + i im) = -im + i re
    &jt * &re == -im.clone() && &jt * &im == re
}

/// A real `2k`-dimensional subspace given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    basis: Vec<Vec<Rational>>,
}

impl LinearSubspace {
    pub fn new(basis: Vec<Vec<Rational>>) -> Result<Self, HkError> {
        let len = basis.len();
        let Some(dim) = basis.first().map(Vec::len) else {
            return Err(HkError::RankDeficient { rank: 0, len: 0 });
        };
        if basis.iter().any(|v| v.len() != dim) {
            return Err(HkError::DimensionMismatch {
                expected: format!("basis vectors of length {dim}"),
                got: "vectors of mixed length".into(),
            });
        }
        let rank = QMatrix::from_columns(&basis).map_or(0, |m| m.rank());
        if rank < len {
            return Err(HkError::RankDeficient { rank, len });
        }
        Ok(Self { basis })
    }

    pub fn from_i64(basis: &[Vec<i64>]) -> Result<Self, HkError> {
        Self::new(
            basis
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].len()
    }

    fn matrix(&self) -> QMatrix {
        QMatrix::from_columns(&self.basis).expect("basis vectors have equal length")
    }

    /// Image under a linear map.
    pub fn transform(&self, t: &QMatrix) -> Result<Self, HkError> {
        Self::new(self.basis.iter().map(|v| t.apply(v)).collect())
    }

    pub fn is_invariant_under(&self, t: &QMatrix) -> bool {
        let m = self.matrix();
        self.basis.iter().all(|v| m.spans(&t.apply(v)))
    }

    /// Gram matrix `form(b_a, b_b)` of a bilinear form on the basis.
    pub fn restrict(&self, form: &QMatrix) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|u| self.basis.iter().map(|v| form.bilinear(u, v)).collect())
            .collect()
    }

    pub fn form_vanishes(&self, form: &QMatrix) -> bool {
        self.restrict(form)
            .iter()
            .all(|row| row.iter().all(Zero::is_zero))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self
                .basis
                .iter()
                .map(|v| v.iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, HkError> {
        let rows = v["basis"]
            .as_array()
            .ok_or_else(|| HkError::ParseRational("basis".into()))?;
        let mut basis = Vec::with_capacity(rows.len());
        for row in rows {
            basis.push(rational_row(row)?);
        }
        Self::new(basis)
    }
}

fn check_dims(model: &HyperkahlerModel, l: &LinearSubspace) -> Result<(), HkError> {
    if l.dim() != 2 * model.k || l.ambient_dim() != model.real_dim() {
        return Err(HkError::DimensionMismatch {
            expected: format!("{} vectors in R^{}", 2 * model.k, model.real_dim()),
            got: format!("{} vectors in R^{}", l.dim(), l.ambient_dim()),
        });
    }
    Ok(())
}

/// `L` is `J_2`-complex and `omega^c_2 = omega_3 + i omega_1` vanishes on it.
pub fn verify_holomorphic_lagrangian(
    model: &HyperkahlerModel,
    l: &LinearSubspace,
) -> Result<bool, HkError> {
    check_dims(model, l)?;
    let (re, im) = complex_symplectic_form(model, Structure::J);
    Ok(l.is_invariant_under(model.complex_structure(Structure::J))
        && l.form_vanishes(&re)
        && l.form_vanishes(&im))
}

/// `Omega_1|_L = k! Pf(omega_2|_L + i omega_3|_L)` relative to the basis of `L`.
pub fn holomorphic_volume_on(
    model: &HyperkahlerModel,
    l: &LinearSubspace,
) -> Result<QComplex, HkError> {
    check_dims(model, l)?;
    let (re, im) = complex_symplectic_form(model, Structure::I);
    let re = l.restrict(&re);
    let im = l.restrict(&im);
    let gram: Vec<Vec<QComplex>> = re
        .into_iter()
        .zip(im)
        .map(|(r, i)| {
            r.into_iter()
                .zip(i)
                .map(|(a, b)| QComplex::new(a, b))
                .collect()
        })
        .collect();
    let factorial: BigInt = (1..=model.k as u64).map(BigInt::from).product();
    let scale = QComplex::real(Rational::from_integer(factorial));
    Ok(&pfaffian(&gram) * &scale)
}

/// `omega_1|_L = 0` and `Im Omega_1|_L = 0`.
pub fn verify_special_lagrangian(
    model: &HyperkahlerModel,
    l: &LinearSubspace,
) -> Result<bool, HkError> {
    check_dims(model, l)?;
    if !l.form_vanishes(&kahler_form(model, Structure::I)) {
        return Ok(false);
    }
    Ok(holomorphic_volume_on(model, l)?.is_real())
}

/// `span{1, j}` in every quaternionic coordinate.
pub fn base_holomorphic_lagrangian(k: usize) -> LinearSubspace {
    let dim = 4 * k;
    let mut basis = Vec::with_capacity(2 * k);
    for b in 0..k {
        for offset in [0, 2] {
            let mut v = vec![Rational::zero(); dim];
            v[4 * b + offset] = Rational::one();
            basis.push(v);
        }
    }
    LinearSubspace::new(basis).expect("coordinate vectors are independent")
}

/// Complex transvection `x -> x + lambda omega^c_2(v, x) v` for the complex
/// structure `J_2`, with `lambda = a + i b` acting through `J_2`. It commutes
/// with `J_2` and preserves `omega^c_2`.
pub fn j2_transvection(
    model: &HyperkahlerModel,
    v: &[Rational],
    a: &Rational,
    b: &Rational,
) -> QMatrix {
    let dim = model.real_dim();
    let (w3, w1) = complex_symplectic_form(model, Structure::J);
    let j2v = model.complex_structure(Structure::J).apply(v);
    let r3 = w3.transpose().apply(v);
    let r1 = w1.transpose().apply(v);
    let mut t = QMatrix::identity(dim);
    for row in 0..dim {
        for col in 0..dim {
            let re = a * &r3[col] - b * &r1[col];
            let im = a * &r1[col] + b * &r3[col];
            let delta = &v[row] * &re + &j2v[row] * &im;
            t[(row, col)] += delta;
        }
    }
    t
}

fn random_small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(
        rng.gen_range(-3i64..=3).into(),
        rng.gen_range(1i64..=3).into(),
    )
}

/// Random `J_2`-holomorphic Lagrangian: `span{1, j}^k` moved by a product of
/// `steps` random rational transvections.
pub fn random_holomorphic_lagrangian<R: Rng + ?Sized>(
    model: &HyperkahlerModel,
    rng: &mut R,
    steps: usize,
) -> LinearSubspace {
    let mut l = base_holomorphic_lagrangian(model.k);
    for _ in 0..steps {
        let v: Vec<Rational> = (0..model.real_dim())
            .map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into()))
            .collect();
        let a = random_small_rational(rng);
        let b = random_small_rational(rng);
        let t = j2_transvection(model, &v, &a, &b);
        l = l.transform(&t).expect("transvections are invertible");
    }
    // Random change of basis inside L keeps the subspace but varies the Gram data.
    let n = l.dim();
    loop {
        let mix: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| random_small_rational(rng)).collect())
            .collect();
        let mix = QMatrix::from_rows(mix).expect("square");
        if mix.determinant().is_zero() {
            continue;
        }
        let basis = (0..n)
            .map(|j| {
                let mut out = vec![Rational::zero(); l.ambient_dim()];
                for (i, b) in l.basis().iter().enumerate() {
                    for (o, x) in out.iter_mut().zip(b) {
                        *o += &mix[(i, j)] * x;
                    }
                }
                out
            })
            .collect();
        return LinearSubspace::new(basis).expect("invertible mix keeps the rank");
    }
}

fn matrix_json(m: &QMatrix) -> Value {
    Value::Array(
        m.row_vecs()
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|x| Value::String(format_rational(x)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn rational_row(v: &Value) -> Result<Vec<Rational>, HkError> {
    let arr = v
        .as_array()
        .ok_or_else(|| HkError::ParseRational(v.to_string()))?;
    arr.iter()
        .map(|x| {
            x.as_str()
                .and_then(parse_rational)
                .ok_or_else(|| HkError::ParseRational(x.to_string()))
        })
        .collect()
}

fn matrix_from_json(v: &Value) -> Result<QMatrix, HkError> {
    let rows = v
        .as_array()
        .ok_or_else(|| HkError::ParseRational(v.to_string()))?;
    let rows: Vec<Vec<Rational>> = rows.iter().map(rational_row).collect::<Result<_, _>>()?;
    QMatrix::from_rows(rows).ok_or_else(|| HkError::DimensionMismatch {
        expected: "rectangular matrix".into(),
        got: "ragged rows".into(),
    })
}
