//! The torsion group `Z_n^{2g}`, its characters, and discrete-torsion classes.
//!
//! `H^2(Z_n^{2g}, U(1))` is represented by alternating forms mod `n`. Phases
//! are residues mod `n`, standing for powers of `exp(2 pi i / n)`.

use serde::{Deserialize, Serialize};

use crate::error::GammaError;

/// Default cap on `n^{2g}` for full enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1_000_000;

/// `Z_n^{2g}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaGroup {
    n: u32,
    g: u32,
}

impl GammaGroup {
    pub fn new(n: u32, g: u32) -> Result<Self, GammaError> {
        if n < 2 {
            return Err(GammaError::InvalidExponent(n));
        }
        if g < 1 {
            return Err(GammaError::InvalidGenus(g));
        }
        Ok(Self { n, g })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    /// Number of coordinates, `2g`.
    pub fn rank(&self) -> usize {
        2 * self.g as usize
    }

    /// `n^{2g}`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        (self.n as u128).checked_pow(2 * self.g)
    }

    pub fn identity(&self) -> GammaElement {
        GammaElement {
            n: self.n,
            coords: vec![0; self.rank()],
        }
    }

    pub fn trivial_character(&self) -> GammaCharacter {
        GammaCharacter {
            n: self.n,
            coords: vec![0; self.rank()],
        }
    }

    /// Element with the given coordinates, reduced mod `n`.
    pub fn element(&self, coords: &[i64]) -> Result<GammaElement, GammaError> {
        self.check_len(coords.len())?;
        Ok(GammaElement {
            n: self.n,
            coords: reduce(coords, self.n),
        })
    }

    pub fn character(&self, coords: &[i64]) -> Result<GammaCharacter, GammaError> {
        self.check_len(coords.len())?;
        Ok(GammaCharacter {
            n: self.n,
            coords: reduce(coords, self.n),
        })
    }

    /// The `index`-th element in lexicographic order (index 0 is the identity).
    pub fn element_at(&self, mut index: u128) -> GammaElement {
        let n = self.n as u128;
        let mut coords = vec![0u32; self.rank()];
        for slot in coords.iter_mut().rev() {
            *slot = (index % n) as u32;
            index /= n;
        }
        GammaElement { n: self.n, coords }
    }

    /// All elements in lexicographic order, identity first, subject to `bound`.
    pub fn enumerate_elements_bounded(&self, bound: u128) -> Result<Elements, GammaError> {
        let order = self.order().unwrap_or(u128::MAX);
        if order > bound {
            return Err(GammaError::EnumerationBound {
                required: order,
                bound,
            });
        }
        Ok(Elements {
            group: *self,
            next: 0,
            end: order,
        })
    }

    pub fn enumerate_elements(&self) -> Result<Elements, GammaError> {
        self.enumerate_elements_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    /// Elements with lexicographic index in `range`; for partitioned iteration.
    pub fn elements_in(&self, range: std::ops::Range<u128>) -> Elements {
        let end = range.end.min(self.order().unwrap_or(u128::MAX));
        Elements {
            group: *self,
            next: range.start.min(end),
            end,
        }
    }

    pub fn contains(&self, e: &GammaElement) -> bool {
        e.n == self.n && e.coords.len() == self.rank()
    }

    pub(crate) fn check_element(&self, e: &GammaElement) -> Result<(), GammaError> {
        self.check_parts(e.n, e.coords.len())
    }

    pub(crate) fn check_character(&self, chi: &GammaCharacter) -> Result<(), GammaError> {
        self.check_parts(chi.n, chi.coords.len())
    }

    fn check_len(&self, len: usize) -> Result<(), GammaError> {
        self.check_parts(self.n, len)
    }

    fn check_parts(&self, n: u32, len: usize) -> Result<(), GammaError> {
        if n != self.n || len != self.rank() {
            return Err(GammaError::GroupMismatch {
                n: self.n,
                dim: self.rank(),
                got_n: n,
                got_dim: len,
            });
        }
        Ok(())
    }
}

fn reduce(coords: &[i64], n: u32) -> Vec<u32> {
    coords
        .iter()
        .map(|&c| c.rem_euclid(n as i64) as u32)
        .collect()
}

/// Lexicographic element iterator.
#[derive(Clone, Debug)]
pub struct Elements {
    group: GammaGroup,
    next: u128,
    end: u128,
}

impl Iterator for Elements {
    type Item = GammaElement;

    fn next(&mut self) -> Option<GammaElement> {
        if self.next >= self.end {
            return None;
        }
        let e = self.group.element_at(self.next);
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (rest, Some(rest))
    }
}

/// An element of `Z_n^{2g}`, coordinates in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaElement {
    n: u32,
    coords: Vec<u32>,
}

impl GammaElement {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Group law.
    pub fn add(&self, other: &GammaElement) -> GammaElement {
        debug_assert_eq!(self.n, other.n);
        GammaElement {
            n: self.n,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % self.n)
                .collect(),
        }
    }

    /// Additive order of the element.
    pub fn order(&self) -> u32 {
        let n = self.n;
        self.coords.iter().map(|&c| n / gcd(n, c)).fold(1, lcm)
    }
}

/// A character `delta -> exp(2 pi i <coords, delta> / n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaCharacter {
    n: u32,
    coords: Vec<u32>,
}

impl GammaCharacter {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Exponent of the value at `delta`: `<coords, delta> mod n`.
    pub fn pair(&self, delta: &GammaElement) -> Result<u32, GammaError> {
        if delta.n != self.n || delta.coords.len() != self.coords.len() {
            return Err(GammaError::GroupMismatch {
                n: self.n,
                dim: self.coords.len(),
                got_n: delta.n,
                got_dim: delta.coords.len(),
            });
        }
        let n = self.n as u64;
        let s = self
            .coords
            .iter()
            .zip(&delta.coords)
            .map(|(&a, &b)| a as u64 * b as u64 % n)
            .sum::<u64>();
        Ok((s % n) as u32)
    }
}

/// A class in `H^2(Gamma, U(1))`, stored as an alternating form mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionClass {
    n: u32,
    form: Vec<Vec<u32>>,
}

impl TorsionClass {
    /// Validates that `form` is alternating mod `n` after reduction.
    pub fn from_form(n: u32, form: &[Vec<i64>]) -> Result<Self, GammaError> {
        if n < 2 {
            return Err(GammaError::InvalidExponent(n));
        }
        let rows = form.len();
        if rows == 0 || rows % 2 == 1 {
            return Err(GammaError::BadShape {
                rows,
                cols: form.first().map_or(0, Vec::len),
            });
        }
        if let Some(bad) = form.iter().find(|r| r.len() != rows) {
            return Err(GammaError::BadShape {
                rows,
                cols: bad.len(),
            });
        }
        let form: Vec<Vec<u32>> = form.iter().map(|r| reduce(r, n)).collect();
        for i in 0..rows {
            if form[i][i] != 0 {
                return Err(GammaError::NotAlternating { n, row: i, col: i });
            }
            for j in i + 1..rows {
                if !(form[i][j] + form[j][i]).is_multiple_of(n) {
                    return Err(GammaError::NotAlternating { n, row: i, col: j });
                }
            }
        }
        Ok(Self { n, form })
    }

    pub fn zero(group: &GammaGroup) -> Self {
        Self {
            n: group.n,
            form: vec![vec![0; group.rank()]; group.rank()],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn form(&self) -> &[Vec<u32>] {
        &self.form
    }

    pub fn belongs_to(&self, group: &GammaGroup) -> bool {
        self.n == group.n && self.form.len() == group.rank()
    }

    pub(crate) fn check_group(&self, group: &GammaGroup) -> Result<(), GammaError> {
        if !self.belongs_to(group) {
            return Err(GammaError::GroupMismatch {
                n: group.n,
                dim: group.rank(),
                got_n: self.n,
                got_dim: self.form.len(),
            });
        }
        Ok(())
    }

    fn check_element(&self, e: &GammaElement) -> Result<(), GammaError> {
        if e.n != self.n || e.coords.len() != self.form.len() {
            return Err(GammaError::GroupMismatch {
                n: self.n,
                dim: self.form.len(),
                got_n: e.n,
                got_dim: e.coords.len(),
            });
        }
        Ok(())
    }

    /// `gamma^T * form` mod `n`, the row through which `gamma` pairs.
    fn row_of(&self, gamma: &GammaElement) -> Vec<u64> {
        let n = self.n as u64;
        let dim = self.form.len();
        (0..dim)
            .map(|j| {
                gamma
                    .coords
                    .iter()
                    .zip(&self.form)
                    .map(|(&gi, row)| gi as u64 * row[j] as u64 % n)
                    .sum::<u64>()
                    % n
            })
            .collect()
    }

    /// Class multiplied by an integer.
    pub fn scaled(&self, c: i64) -> TorsionClass {
        let n = self.n as i64;
        let c = c.rem_euclid(n) as u64;
        TorsionClass {
            n: self.n,
            form: self
                .form
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| (v as u64 * c % n as u64) as u32)
                        .collect()
                })
                .collect(),
        }
    }
}

/// `sum_i pi_i^* eta`: `g` diagonal blocks `[[0, 1], [-1, 0]]` mod `n`.
pub fn standard_rho(group: &GammaGroup) -> TorsionClass {
    let dim = group.rank();
    let mut form = vec![vec![0u32; dim]; dim];
    for b in 0..group.g as usize {
        form[2 * b][2 * b + 1] = 1;
        form[2 * b + 1][2 * b] = group.n - 1;
    }
    TorsionClass { n: group.n, form }
}

/// Exponent of the discrete-torsion phase `eps(gamma, delta) = gamma^T rho delta mod n`.
pub fn epsilon_exponent(
    rho: &TorsionClass,
    gamma: &GammaElement,
    delta: &GammaElement,
) -> Result<u32, GammaError> {
    rho.check_element(gamma)?;
    rho.check_element(delta)?;
    let n = rho.n as u64;
    let row = rho.row_of(gamma);
    let s: u64 = row
        .iter()
        .zip(&delta.coords)
        .map(|(&r, &d)| r * d as u64 % n)
        .sum();
    Ok((s % n) as u32)
}

/// The character `delta -> eps(gamma, delta)^c` induced by `c * rho` on the sector of `gamma`.
pub fn induced_character(
    rho: &TorsionClass,
    gamma: &GammaElement,
    c: i64,
) -> Result<GammaCharacter, GammaError> {
    rho.check_element(gamma)?;
    let n = rho.n as u64;
    let c = c.rem_euclid(rho.n as i64) as u64;
    let coords = rho
        .row_of(gamma)
        .into_iter()
        .map(|r| (r * c % n) as u32)
        .collect();
    Ok(GammaCharacter { n: rho.n, coords })
}

/// All `n^{2g}` elements, identity first, refusing beyond the default bound.
pub fn enumerate_elements(group: &GammaGroup) -> Result<Elements, GammaError> {
    group.enumerate_elements()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

impl Serialize for GammaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl Serialize for GammaCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl Serialize for TorsionClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.form.serialize(s)
    }
}
