//! Sector data for a global quotient `X / Gamma` and the stringy E-polynomial.
//!
//! `Gamma` is abelian, so conjugacy classes are single elements and every
//! centralizer is the whole group. Each [`Sector`] stores the cohomology of
//! the fixed locus `X^gamma` split into `Gamma`-isotypic pieces. The
//! trivial-character piece is `E(X^gamma / Gamma)`; discrete torsion selects
//! the piece at the induced character instead.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::epoly::EPolynomial;
use crate::error::{GammaError, OrbifoldError};
use crate::gamma::{induced_character, GammaCharacter, GammaElement, GammaGroup, TorsionClass};

/// The contribution of one group element `gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    gamma: GammaElement,
    shift: u32,
    isotypic: BTreeMap<GammaCharacter, EPolynomial>,
}

impl Sector {
    pub fn new(
        gamma: GammaElement,
        shift: u32,
        isotypic: BTreeMap<GammaCharacter, EPolynomial>,
    ) -> Result<Self, OrbifoldError> {
        if gamma.is_identity() && shift != 0 {
            return Err(OrbifoldError::IdentityShift(shift));
        }
        for chi in isotypic.keys() {
            if chi.n() != gamma.n() || chi.coords().len() != gamma.coords().len() {
                return Err(GammaError::GroupMismatch {
                    n: gamma.n(),
                    dim: gamma.coords().len(),
                    got_n: chi.n(),
                    got_dim: chi.coords().len(),
                }
                .into());
            }
        }
        let isotypic = isotypic.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(Self {
            gamma,
            shift,
            isotypic,
        })
    }

    /// Sector whose cohomology is entirely `Gamma`-invariant.
    pub fn invariant(
        group: &GammaGroup,
        gamma: GammaElement,
        shift: u32,
        component: EPolynomial,
    ) -> Result<Self, OrbifoldError> {
        group.check_element(&gamma)?;
        let mut iso = BTreeMap::new();
        iso.insert(group.trivial_character(), component);
        Self::new(gamma, shift, iso)
    }

    pub fn gamma(&self) -> &GammaElement {
        &self.gamma
    }

    /// Fermionic shift `F(gamma)`.
    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn isotypic(&self) -> &BTreeMap<GammaCharacter, EPolynomial> {
        &self.isotypic
    }

    /// Isotypic component at `chi`; zero when absent.
    pub fn component(&self, chi: &GammaCharacter) -> EPolynomial {
        self.isotypic.get(chi).cloned().unwrap_or_default()
    }

    /// `E(X^gamma / Gamma)`.
    pub fn invariant_component(&self) -> EPolynomial {
        self.isotypic
            .iter()
            .find(|(chi, _)| chi.is_trivial())
            .map(|(_, p)| p.clone())
            .unwrap_or_default()
    }
}

/// `(X, Gamma)` described sector by sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldPresentation {
    group: GammaGroup,
    sectors: Vec<Sector>,
}

impl OrbifoldPresentation {
    pub fn new(group: GammaGroup, sectors: Vec<Sector>) -> Result<Self, OrbifoldError> {
        let mut seen = HashSet::with_capacity(sectors.len());
        for (i, s) in sectors.iter().enumerate() {
            group.check_element(&s.gamma)?;
            for chi in s.isotypic.keys() {
                group.check_character(chi)?;
            }
            if !seen.insert(s.gamma.clone()) {
                return Err(OrbifoldError::DuplicateSector(s.gamma.coords().to_vec()));
            }
            if s.gamma.is_identity() && i != 0 {
                return Err(OrbifoldError::IdentityNotFirst);
            }
        }
        Ok(Self { group, sectors })
    }

    pub fn group(&self) -> &GammaGroup {
        &self.group
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn identity_sector(&self) -> Option<&Sector> {
        self.sectors.first().filter(|s| s.gamma.is_identity())
    }

    pub fn nonidentity_sectors(&self) -> impl Iterator<Item = &Sector> {
        self.sectors.iter().filter(|s| !s.gamma.is_identity())
    }

    /// Disjoint union over the same group: identity sectors are summed
    /// isotypic-wise, nonidentity sectors must not overlap.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, OrbifoldError> {
        if self.group != other.group {
            return Err(GammaError::GroupMismatch {
                n: self.group.n(),
                dim: self.group.rank(),
                got_n: other.group.n(),
                got_dim: other.group.rank(),
            }
            .into());
        }
        let mut sectors = Vec::with_capacity(self.sectors.len() + other.sectors.len());
        match (self.identity_sector(), other.identity_sector()) {
            (None, None) => {}
            (Some(a), None) | (None, Some(a)) => sectors.push(a.clone()),
            (Some(a), Some(b)) => {
                let mut iso = a.isotypic.clone();
                for (chi, p) in &b.isotypic {
                    let entry = iso.entry(chi.clone()).or_default();
                    *entry += p;
                }
                sectors.push(Sector::new(a.gamma.clone(), 0, iso)?);
            }
        }
        sectors.extend(self.nonidentity_sectors().cloned());
        sectors.extend(other.nonidentity_sectors().cloned());
        Self::new(self.group, sectors)
    }

    pub fn from_json_str(s: &str) -> Result<Self, PresentationParseError> {
        let raw: PresentationJson = serde_json::from_str(s)?;
        Ok(raw.into_presentation()?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&PresentationJson::from(self))
            .expect("presentation serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&PresentationJson::from(self))
            .expect("presentation serialization is infallible")
    }
}

/// `E_st(X / Gamma) = sum_gamma E(X^gamma / Gamma) (xy)^{F(gamma)}`.
pub fn stringy_e(p: &OrbifoldPresentation) -> EPolynomial {
    p.sectors
        .iter()
        .map(|s| s.invariant_component().scale_monomial(s.shift))
        .sum()
}

/// `E_st^{c rho}`: each sector contributes its isotypic piece at the
/// character induced by `c * rho`.
pub fn twisted_stringy_e(
    p: &OrbifoldPresentation,
    rho: &TorsionClass,
    c: i64,
) -> Result<EPolynomial, OrbifoldError> {
    rho.check_group(&p.group)?;
    let mut total = EPolynomial::zero();
    for s in &p.sectors {
        let chi = induced_character(rho, &s.gamma, c)?;
        if let Some(piece) = s.isotypic.get(&chi) {
            total += &piece.scale_monomial(s.shift);
        }
    }
    Ok(total)
}

/// Age of a finite-order action: `sum c_i / n` over normal eigenvalues
/// `exp(2 pi i c_i / n)`; must be an integer.
pub fn fermionic_shift(age_numerators: &[u32], n: u32) -> Result<u32, OrbifoldError> {
    let mut sum: u64 = 0;
    for &value in age_numerators {
        if value >= n {
            return Err(OrbifoldError::NumeratorOutOfRange { value, n });
        }
        sum += value as u64;
    }
    if !sum.is_multiple_of(n as u64) {
        return Err(OrbifoldError::NonIntegralShift { sum, n });
    }
    Ok((sum / n as u64) as u32)
}

#[derive(Debug, thiserror::Error)]
pub enum PresentationParseError {
    #[error("malformed presentation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid presentation: {0}")]
    Invalid(#[from] OrbifoldError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationJson {
    n: u32,
    g: u32,
    sectors: Vec<SectorJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectorJson {
    gamma: Vec<i64>,
    shift: u32,
    isotypic: Vec<IsotypicJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsotypicJson {
    character: Vec<i64>,
    epoly: EPolynomial,
}

impl PresentationJson {
    fn into_presentation(self) -> Result<OrbifoldPresentation, OrbifoldError> {
        let group = GammaGroup::new(self.n, self.g)?;
        let mut sectors = Vec::with_capacity(self.sectors.len());
        for s in self.sectors {
            let gamma = group.element(&s.gamma)?;
            let mut iso: BTreeMap<GammaCharacter, EPolynomial> = BTreeMap::new();
            for piece in s.isotypic {
                let chi = group.character(&piece.character)?;
                *iso.entry(chi).or_default() += &piece.epoly;
            }
            sectors.push(Sector::new(gamma, s.shift, iso)?);
        }
        OrbifoldPresentation::new(group, sectors)
    }
}

impl From<&OrbifoldPresentation> for PresentationJson {
    fn from(p: &OrbifoldPresentation) -> Self {
        let to_i64 = |v: &[u32]| v.iter().map(|&c| c as i64).collect::<Vec<_>>();
        PresentationJson {
            n: p.group.n(),
            g: p.group.g(),
            sectors: p
                .sectors
                .iter()
                .map(|s| SectorJson {
                    gamma: to_i64(s.gamma.coords()),
                    shift: s.shift,
                    isotypic: s
                        .isotypic
                        .iter()
                        .map(|(chi, poly)| IsotypicJson {
                            character: to_i64(chi.coords()),
                            epoly: poly.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epoly::e_abelian_variety;
    use crate::gamma::standard_rho;

    fn grp(n: u32, g: u32) -> GammaGroup {
        GammaGroup::new(n, g).unwrap()
    }

    #[test]
    fn trivial_group_recovers_e() {
        // Z_n^{2g} with only the identity sector present acts as the trivial quotient.
        let g = grp(2, 1);
        let p = e_abelian_variety(2).scale_monomial(1);
        let pres = OrbifoldPresentation::new(
            g,
            vec![Sector::invariant(&g, g.identity(), 0, p.clone()).unwrap()],
        )
        .unwrap();
        assert_eq!(stringy_e(&pres), p);
    }

    #[test]
    fn single_shifted_sector() {
        let g = grp(2, 1);
        let gamma = g.element(&[1, 1]).unwrap();
        let pres = OrbifoldPresentation::new(
            g,
            vec![Sector::invariant(&g, gamma, 1, EPolynomial::one()).unwrap()],
        )
        .unwrap();
        assert_eq!(stringy_e(&pres), EPolynomial::xy_power(1));
    }

    #[test]
    fn rank2_genus2_one_puncture_by_hand() {
        let g = grp(2, 2);
        let component = e_abelian_variety(1);
        let sectors = g
            .enumerate_elements()
            .unwrap()
            .skip(1)
            .map(|e| Sector::invariant(&g, e, 4, component.clone()).unwrap())
            .collect();
        let pres = OrbifoldPresentation::new(g, sectors).unwrap();
        let expected = e_abelian_variety(1).scale_monomial(4).scale(&15.into());
        assert_eq!(stringy_e(&pres), expected);
    }

    #[test]
    fn twisted_examples() {
        let g = grp(2, 1);
        let rho = standard_rho(&g);
        let mut iso = BTreeMap::new();
        iso.insert(g.trivial_character(), e_abelian_variety(1));
        iso.insert(g.character(&[1, 1]).unwrap(), EPolynomial::x());
        let id = Sector::new(g.identity(), 0, iso).unwrap();
        let only_id = OrbifoldPresentation::new(g, vec![id.clone()]).unwrap();
        for c in -3..=3 {
            assert_eq!(
                twisted_stringy_e(&only_id, &rho, c).unwrap(),
                e_abelian_variety(1)
            );
        }

        // gamma = (1,0) induces (0,1) at c = 1; the sector only stores (1,1).
        let mut iso = BTreeMap::new();
        iso.insert(g.character(&[1, 1]).unwrap(), EPolynomial::y());
        iso.insert(g.trivial_character(), EPolynomial::one());
        let s = Sector::new(g.element(&[1, 0]).unwrap(), 1, iso).unwrap();
        let pres = OrbifoldPresentation::new(g, vec![id, s]).unwrap();
        assert_eq!(
            twisted_stringy_e(&pres, &rho, 1).unwrap(),
            e_abelian_variety(1)
        );
        assert_eq!(twisted_stringy_e(&pres, &rho, 0).unwrap(), stringy_e(&pres));
        assert_eq!(twisted_stringy_e(&pres, &rho, 2).unwrap(), stringy_e(&pres));
    }

    #[test]
    fn twisted_selects_induced_piece() {
        let g = grp(2, 1);
        let rho = standard_rho(&g);
        let mut iso = BTreeMap::new();
        iso.insert(g.character(&[0, 1]).unwrap(), EPolynomial::y());
        let s = Sector::new(g.element(&[1, 0]).unwrap(), 2, iso).unwrap();
        let pres = OrbifoldPresentation::new(g, vec![s]).unwrap();
        assert_eq!(
            twisted_stringy_e(&pres, &rho, 1).unwrap(),
            EPolynomial::y().scale_monomial(2)
        );
        assert!(stringy_e(&pres).is_zero());
    }

    #[test]
    fn twisted_group_mismatch() {
        let g = grp(2, 1);
        let pres = OrbifoldPresentation::new(g, vec![]).unwrap();
        let rho = standard_rho(&grp(3, 1));
        assert!(matches!(
            twisted_stringy_e(&pres, &rho, 1),
            Err(OrbifoldError::Gamma(GammaError::GroupMismatch { .. }))
        ));
    }

    #[test]
    fn sector_invariants() {
        let g = grp(2, 1);
        assert_eq!(
            Sector::invariant(&g, g.identity(), 3, EPolynomial::one()).unwrap_err(),
            OrbifoldError::IdentityShift(3)
        );
        let mut iso = BTreeMap::new();
        iso.insert(grp(3, 1).trivial_character(), EPolynomial::one());
        assert!(Sector::new(g.identity(), 0, iso).is_err());

        let a = Sector::invariant(&g, g.element(&[1, 0]).unwrap(), 1, EPolynomial::one()).unwrap();
        let id = Sector::invariant(&g, g.identity(), 0, EPolynomial::one()).unwrap();
        assert!(matches!(
            OrbifoldPresentation::new(g, vec![a.clone(), a.clone()]),
            Err(OrbifoldError::DuplicateSector(_))
        ));
        assert_eq!(
            OrbifoldPresentation::new(g, vec![a.clone(), id.clone()]).unwrap_err(),
            OrbifoldError::IdentityNotFirst
        );
        assert!(OrbifoldPresentation::new(g, vec![id, a]).is_ok());
        let empty = Sector::new(g.element(&[0, 1]).unwrap(), 5, BTreeMap::new()).unwrap();
        let pres = OrbifoldPresentation::new(g, vec![empty]).unwrap();
        assert!(stringy_e(&pres).is_zero());
    }

    #[test]
    fn fermionic_shift_examples() {
        assert_eq!(fermionic_shift(&[0, 0, 0], 3).unwrap(), 0);
        assert_eq!(fermionic_shift(&[1; 6], 2).unwrap(), 3);
        // g = 2, m = 1: eight eigenvalues -1 give 3g - 3 + m = 4.
        assert_eq!(fermionic_shift(&[1; 8], 2).unwrap(), 4);
        assert_eq!(fermionic_shift(&[1, 2], 3).unwrap(), 1);
        assert_eq!(
            fermionic_shift(&[1, 1, 1], 2).unwrap_err(),
            OrbifoldError::NonIntegralShift { sum: 3, n: 2 }
        );
        assert!(matches!(
            fermionic_shift(&[3], 3),
            Err(OrbifoldError::NumeratorOutOfRange { .. })
        ));
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let g = grp(2, 1);
        let mut iso = BTreeMap::new();
        iso.insert(
            g.character(&[0, 1]).unwrap(),
            EPolynomial::monomial(1, 0, 2),
        );
        let s = Sector::new(g.element(&[1, 0]).unwrap(), 1, iso).unwrap();
        let id = Sector::invariant(&g, g.identity(), 0, EPolynomial::one()).unwrap();
        let pres = OrbifoldPresentation::new(g, vec![id, s]).unwrap();
        let text = pres.to_json_string();
        assert_eq!(
            text,
            r#"{"n":2,"g":1,"sectors":[{"gamma":[0,0],"shift":0,"isotypic":[{"character":[0,0],"epoly":[[0,0,"1"]]}]},{"gamma":[1,0],"shift":1,"isotypic":[{"character":[0,1],"epoly":[[1,0,"2"]]}]}]}"#
        );
        assert_eq!(OrbifoldPresentation::from_json_str(&text).unwrap(), pres);
    }

    #[test]
    fn json_errors() {
        let err = OrbifoldPresentation::from_json_str(r#"{"n":2,"g":1}"#).unwrap_err();
        assert!(err.to_string().contains("sectors"), "{err}");
        let err = OrbifoldPresentation::from_json_str(
            r#"{"n":2,"g":1,"sectors":[{"gamma":[1],"shift":0,"isotypic":[]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, PresentationParseError::Invalid(_)));
        let err = OrbifoldPresentation::from_json_str("{\"n\":2,\n\"g\":").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn disjoint_union_sums() {
        let g = grp(2, 1);
        let id_a = Sector::invariant(&g, g.identity(), 0, EPolynomial::x()).unwrap();
        let id_b = Sector::invariant(&g, g.identity(), 0, EPolynomial::y()).unwrap();
        let s = Sector::invariant(&g, g.element(&[1, 1]).unwrap(), 2, EPolynomial::one()).unwrap();
        let t = Sector::invariant(&g, g.element(&[0, 1]).unwrap(), 1, EPolynomial::x()).unwrap();
        let a = OrbifoldPresentation::new(g, vec![id_a, s.clone()]).unwrap();
        let b = OrbifoldPresentation::new(g, vec![id_b, t]).unwrap();
        let u = a.disjoint_union(&b).unwrap();
        assert_eq!(stringy_e(&u), &stringy_e(&a) + &stringy_e(&b));
        let c = OrbifoldPresentation::new(g, vec![s]).unwrap();
        assert!(a.disjoint_union(&c).is_err());
    }
}
