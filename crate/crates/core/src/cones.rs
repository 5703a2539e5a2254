//! Nef cone models and the one-parameter constants `T` (nef threshold) and
//! `sigma` (anti-ample threshold) of a pair of classes.
//!
//! A cone model is a finite list of facet covectors `f`, each imposing
//! `f . D >= 0`, optionally together with the light-cone facet
//! `D^2 >= 0, D . H >= 0` for a reference Kähler class `H`. Nef means every
//! constraint holds, Kähler means every constraint holds strictly.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{DivClass, IntersectionLattice, QuadClass};
use crate::numeric::{QuadNum, Rat};

/// Which constraint of a cone model attains a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Facet {
    Linear(usize),
    LightCone,
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Facet::Linear(i) => write!(f, "facet {}", i),
            Facet::LightCone => write!(f, "light-cone"),
        }
    }
}

impl Serialize for Facet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Facet::Linear(i) => serializer.serialize_u64(*i as u64),
            Facet::LightCone => serializer.serialize_str("light-cone"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefConeModel {
    facets: Vec<DivClass>,
    light_cone: Option<DivClass>,
}

impl NefConeModel {
    pub fn new(facets: Vec<DivClass>, light_cone: Option<DivClass>) -> Self {
        NefConeModel { facets, light_cone }
    }

    pub fn light_cone_only(reference: DivClass) -> Self {
        NefConeModel {
            facets: Vec::new(),
            light_cone: Some(reference),
        }
    }

    pub fn facets(&self) -> &[DivClass] {
        &self.facets
    }

    /// Reference Kähler class of the light-cone facet, if present.
    pub fn light_cone(&self) -> Option<&DivClass> {
        self.light_cone.as_ref()
    }
}

/// A bound on a cone constant together with the constraint attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: QuadNum,
    pub facet: Facet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeConstants {
    pub t: QuadNum,
    pub sigma: QuadNum,
    pub t_facet: Facet,
    pub sigma_facet: Facet,
}

/// An intersection lattice together with a nef cone model on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    lattice: IntersectionLattice,
    cone: NefConeModel,
}

impl Surface {
    pub fn new(lattice: IntersectionLattice, cone: NefConeModel) -> Result<Self> {
        for f in &cone.facets {
            lattice.check_rank(f)?;
        }
        if cone.facets.is_empty() && cone.light_cone.is_none() {
            return Err(Error::EmptyCone);
        }
        if let Some(h) = &cone.light_cone {
            lattice.check_rank(h)?;
            if !lattice.self_pair(h)?.is_positive() {
                return Err(Error::BadReferenceClass);
            }
            for f in &cone.facets {
                if !lattice.pair(f, h)?.is_positive() {
                    return Err(Error::BadReferenceClass);
                }
            }
        }
        Ok(Surface { lattice, cone })
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn cone(&self) -> &NefConeModel {
        &self.cone
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    fn membership(&self, d: &QuadClass, strict: bool) -> Result<bool> {
        let ok = |x: &QuadNum| if strict { x.sign() > 0 } else { x.sign() >= 0 };
        for f in &self.cone.facets {
            if !ok(&self.lattice.pair_quad(&f.to_quad(), d)?) {
                return Ok(false);
            }
        }
        if let Some(h) = &self.cone.light_cone {
            if !ok(&self.lattice.pair_quad(d, d)?)
                || !ok(&self.lattice.pair_quad(&h.to_quad(), d)?)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_nef(&self, d: &DivClass) -> Result<bool> {
        self.lattice.check_rank(d)?;
        self.membership(&d.to_quad(), false)
    }

    pub fn is_kahler(&self, d: &DivClass) -> Result<bool> {
        self.lattice.check_rank(d)?;
        self.membership(&d.to_quad(), true)
    }

    /// Nef test for classes with quadratic coordinates (sharing one radicand).
    pub fn is_nef_quad(&self, d: &QuadClass) -> Result<bool> {
        self.membership(d, false)
    }

    pub fn is_kahler_quad(&self, d: &QuadClass) -> Result<bool> {
        self.membership(d, true)
    }

    pub(crate) fn require_kahler_omega(&self, omega: &DivClass) -> Result<()> {
        if self.is_kahler(omega)? {
            Ok(())
        } else {
            Err(Error::OmegaNotKahler)
        }
    }

    /// Roots `d_minus <= d_plus` of `(theta - d omega)^2 = 0`, i.e. of
    /// `omega^2 d^2 - 2 (theta.omega) d + theta^2`.
    pub fn light_cone_roots(
        &self,
        theta: &DivClass,
        omega: &DivClass,
    ) -> Result<(QuadNum, QuadNum)> {
        let ww = self.lattice.self_pair(omega)?;
        if !ww.is_positive() {
            return Err(Error::OmegaNotKahler);
        }
        let tw = self.lattice.pair(theta, omega)?;
        let tt = self.lattice.self_pair(theta)?;
        let disc = &tw * &tw - &tt * &ww;
        if disc.is_negative() {
            return Err(Error::NegativeDiscriminant);
        }
        let half = QuadNum::sqrt_rat(&disc)?.div_rat(&ww);
        let centre = &tw / &ww;
        Ok(((-&half).add_rat(&centre), half.add_rat(&centre)))
    }

    /// `T(theta, omega) = sup { d : theta - d omega nef }`.
    ///
    /// Ties go to the lowest facet index, the light-cone facet last.
    pub fn seshadri_t(&self, theta: &DivClass, omega: &DivClass) -> Result<Bound> {
        self.lattice.check_rank(theta)?;
        self.require_kahler_omega(omega)?;
        let mut best: Option<Bound> = None;
        for (bound, facet) in self.linear_bounds(theta, omega)? {
            if best.as_ref().is_none_or(|b| bound < b.value) {
                best = Some(Bound {
                    value: bound,
                    facet,
                });
            }
        }
        if self.cone.light_cone.is_some() {
            let (lo, _) = self.light_cone_roots(theta, omega)?;
            if best.as_ref().is_none_or(|b| lo < b.value) {
                best = Some(Bound {
                    value: lo,
                    facet: Facet::LightCone,
                });
            }
        }
        Ok(best.expect("validated cone has at least one constraint"))
    }

    /// `sigma(theta, omega) = inf { d : d omega - theta Kähler }`.
    pub fn sigma_inf(&self, theta: &DivClass, omega: &DivClass) -> Result<Bound> {
        self.lattice.check_rank(theta)?;
        self.require_kahler_omega(omega)?;
        let mut best: Option<Bound> = None;
        for (bound, facet) in self.linear_bounds(theta, omega)? {
            if best.as_ref().is_none_or(|b| bound > b.value) {
                best = Some(Bound {
                    value: bound,
                    facet,
                });
            }
        }
        if self.cone.light_cone.is_some() {
            let (_, hi) = self.light_cone_roots(theta, omega)?;
            if best.as_ref().is_none_or(|b| hi > b.value) {
                best = Some(Bound {
                    value: hi,
                    facet: Facet::LightCone,
                });
            }
        }
        Ok(best.expect("validated cone has at least one constraint"))
    }

    pub fn cone_constants(&self, theta: &DivClass, omega: &DivClass) -> Result<ConeConstants> {
        let t = self.seshadri_t(theta, omega)?;
        let s = self.sigma_inf(theta, omega)?;
        Ok(ConeConstants {
            t: t.value,
            sigma: s.value,
            t_facet: t.facet,
            sigma_facet: s.facet,
        })
    }

    /// `(f.theta / f.omega, facet)` for each linear facet; `omega` must be Kähler.
    fn linear_bounds(&self, theta: &DivClass, omega: &DivClass) -> Result<Vec<(QuadNum, Facet)>> {
        self.cone
            .facets
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let fw = self.lattice.pair(f, omega)?;
                debug_assert!(!fw.is_zero());
                let ft: Rat = self.lattice.pair(f, theta)?;
                Ok((QuadNum::from_rat(ft / fw), Facet::Linear(i)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn f1() -> Surface {
        let l = IntersectionLattice::diagonal(&[int(1), int(-1)], None).unwrap();
        let cone = NefConeModel::new(
            vec![DivClass::from_ints(&[0, 1]), DivClass::from_ints(&[1, -1])],
            None,
        );
        Surface::new(l, cone).unwrap()
    }

    fn ross(g: i64, s_c: Rat) -> Surface {
        let l = IntersectionLattice::diagonal(&[int(2), int(-2 * g)], None).unwrap();
        let low = DivClass::new(vec![rat(1, 2), -s_c / int(2 * g)]);
        let up = DivClass::new(vec![rat(1, 2), rat(1, 2)]);
        Surface::new(l, NefConeModel::new(vec![low, up], None)).unwrap()
    }

    fn q(r: Rat) -> QuadNum {
        QuadNum::from_rat(r)
    }

    #[test]
    fn f1_membership() {
        let s = f1();
        assert!(s.is_nef(&DivClass::from_ints(&[1, 0])).unwrap());
        assert!(!s.is_nef(&DivClass::from_ints(&[0, 1])).unwrap());
        assert!(s.is_nef(&DivClass::zero(2)).unwrap());
        assert!(s.is_kahler(&DivClass::from_ints(&[2, -1])).unwrap());
        assert!(!s.is_kahler(&DivClass::from_ints(&[1, 0])).unwrap());
        assert!(s.is_nef(&DivClass::zero(3)).is_err());
    }

    #[test]
    fn light_cone_membership() {
        let l = IntersectionLattice::diagonal(&[int(1), int(-1)], None).unwrap();
        let s = Surface::new(
            l,
            NefConeModel::light_cone_only(DivClass::from_ints(&[1, 0])),
        )
        .unwrap();
        assert!(s.is_kahler(&DivClass::from_ints(&[1, 0])).unwrap());
        assert!(s.is_nef(&DivClass::from_ints(&[1, 1])).unwrap());
        assert!(!s.is_kahler(&DivClass::from_ints(&[1, 1])).unwrap());
        assert!(!s.is_nef(&DivClass::from_ints(&[-2, 1])).unwrap());
    }

    #[test]
    fn rejects_malformed_models() {
        let l = IntersectionLattice::diagonal(&[int(1), int(-1)], None).unwrap();
        assert_eq!(
            Surface::new(l.clone(), NefConeModel::new(vec![], None)),
            Err(Error::EmptyCone)
        );
        assert_eq!(
            Surface::new(
                l.clone(),
                NefConeModel::light_cone_only(DivClass::from_ints(&[1, 1]))
            ),
            Err(Error::BadReferenceClass)
        );
        let cone = NefConeModel::new(
            vec![DivClass::from_ints(&[1, 0])],
            Some(DivClass::from_ints(&[1, 0])),
        );
        assert!(Surface::new(l, cone).is_ok());
    }

    #[test]
    fn f1_constants() {
        let s = f1();
        let theta = DivClass::from_ints(&[2, -1]);
        let omega = DivClass::from_ints(&[5, -1]);
        let t = s.seshadri_t(&theta, &omega).unwrap();
        assert_eq!(
            t,
            Bound {
                value: q(rat(1, 4)),
                facet: Facet::Linear(1)
            }
        );
        let sg = s.sigma_inf(&theta, &omega).unwrap();
        assert_eq!(
            sg,
            Bound {
                value: q(int(1)),
                facet: Facet::Linear(0)
            }
        );
        assert_eq!(s.seshadri_t(&omega, &omega).unwrap().value, q(int(1)));
        assert_eq!(s.sigma_inf(&omega, &omega).unwrap().value, q(int(1)));
    }

    #[test]
    fn ross_constants() {
        let s = ross(4, int(2));
        let k = DivClass::from_ints(&[6, 0]);
        let l3 = DivClass::from_ints(&[3, -1]);
        let t = s.seshadri_t(&k, &l3).unwrap();
        assert_eq!(
            t,
            Bound {
                value: q(rat(6, 7)),
                facet: Facet::Linear(1)
            }
        );
        let sg = s.sigma_inf(&k, &l3).unwrap();
        assert_eq!(
            sg,
            Bound {
                value: q(int(6)),
                facet: Facet::Linear(0)
            }
        );
    }

    #[test]
    fn omega_must_be_kahler() {
        let s = f1();
        let theta = DivClass::from_ints(&[2, -1]);
        assert_eq!(
            s.seshadri_t(&theta, &DivClass::from_ints(&[1, 0])),
            Err(Error::OmegaNotKahler)
        );
        assert_eq!(
            s.sigma_inf(&theta, &DivClass::from_ints(&[0, 1])),
            Err(Error::OmegaNotKahler)
        );
    }

    #[test]
    fn light_cone_bounds() {
        let l = IntersectionLattice::diagonal(&[int(1), int(-1)], None).unwrap();
        let s = Surface::new(
            l,
            NefConeModel::light_cone_only(DivClass::from_ints(&[1, 0])),
        )
        .unwrap();
        // d^2 - 4d + 3
        let theta = DivClass::from_ints(&[2, 1]);
        let omega = DivClass::from_ints(&[1, 0]);
        let t = s.seshadri_t(&theta, &omega).unwrap();
        assert_eq!(
            t,
            Bound {
                value: q(int(1)),
                facet: Facet::LightCone
            }
        );
        assert_eq!(s.sigma_inf(&theta, &omega).unwrap().value, q(int(3)));
        // 8d^2 - 14d + 3
        let theta = DivClass::from_ints(&[2, -1]);
        let omega = DivClass::from_ints(&[3, 1]);
        let roots = s.light_cone_roots(&theta, &omega).unwrap();
        assert_eq!(roots, (q(rat(1, 4)), q(rat(3, 2))));
        // 4d^2 - 4d
        let theta = DivClass::from_ints(&[1, 1]);
        let omega = DivClass::from_ints(&[2, 0]);
        let roots = s.light_cone_roots(&theta, &omega).unwrap();
        assert_eq!(roots, (q(int(0)), q(int(1))));
    }

    #[test]
    fn surd_light_cone_root() {
        let l = IntersectionLattice::diagonal(&[int(2), int(-1)], None).unwrap();
        let s = Surface::new(
            l,
            NefConeModel::light_cone_only(DivClass::from_ints(&[1, 0])),
        )
        .unwrap();
        // 2d^2 - 4d + 1 -> 1 -+ sqrt(2)/2
        let theta = DivClass::from_ints(&[1, 1]);
        let omega = DivClass::from_ints(&[1, 0]);
        let (lo, hi) = s.light_cone_roots(&theta, &omega).unwrap();
        let r = QuadNum::new(int(1), rat(-1, 2), 2.into()).unwrap();
        assert_eq!(lo, r);
        assert_eq!(hi, r.conj());
        let t = s.seshadri_t(&theta, &omega).unwrap();
        assert_eq!(t.value, lo);
        let boundary = QuadClass(vec![QuadNum::one() - lo.clone(), QuadNum::one()]);
        assert!(s.is_nef_quad(&boundary).unwrap());
        assert!(!s.is_kahler_quad(&boundary).unwrap());
    }
}
