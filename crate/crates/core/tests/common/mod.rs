#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use mirror_core::{EPolynomial, GammaGroup, OrbifoldPresentation, Sector, TorsionClass};
use rand::Rng;

pub fn random_epoly<R: Rng>(rng: &mut R, max_terms: usize, max_deg: i64) -> EPolynomial {
    let terms = (0..rng.gen_range(0..=max_terms))
        .map(|_| {
            (
                rng.gen_range(0..=max_deg),
                rng.gen_range(0..=max_deg),
                rng.gen_range(-9i64..=9),
            )
        })
        .collect::<Vec<_>>();
    EPolynomial::from_terms(terms).unwrap()
}

/// Random presentation over `Z_n^{2g}` with at most `max_sectors` sectors and
/// random isotypic data on each.
pub fn random_presentation<R: Rng>(rng: &mut R, max_sectors: usize) -> OrbifoldPresentation {
    let n = rng.gen_range(2..=3);
    let g = rng.gen_range(1..=2);
    let group = GammaGroup::new(n, g).unwrap();
    let order = group.order().unwrap();
    let wanted = rng.gen_range(0..=max_sectors).min(order as usize);
    let mut picked = BTreeSet::new();
    while picked.len() < wanted {
        picked.insert(rng.gen_range(0..order));
    }
    let sectors = picked
        .into_iter()
        .map(|idx| {
            let gamma = group.element_at(idx);
            let shift = if gamma.is_identity() {
                0
            } else {
                rng.gen_range(0..6)
            };
            let mut iso = BTreeMap::new();
            for _ in 0..rng.gen_range(0..4) {
                let chi = group.element_at(rng.gen_range(0..order));
                let coords: Vec<i64> = chi.coords().iter().map(|&c| c as i64).collect();
                iso.insert(group.character(&coords).unwrap(), random_epoly(rng, 4, 4));
            }
            if rng.gen_bool(0.7) {
                iso.insert(group.trivial_character(), random_epoly(rng, 4, 4));
            }
            Sector::new(gamma, shift, iso).unwrap()
        })
        .collect();
    OrbifoldPresentation::new(group, sectors).unwrap()
}

/// Random alternating form mod `n` on the group of `p`.
pub fn random_torsion_class<R: Rng>(rng: &mut R, group: &GammaGroup) -> TorsionClass {
    let dim = group.rank();
    let n = group.n() as i64;
    let mut form = vec![vec![0i64; dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let v = rng.gen_range(0..n);
            form[i][j] = v;
            form[j][i] = -v;
        }
    }
    TorsionClass::from_form(group.n(), &form).unwrap()
}
