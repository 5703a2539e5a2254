//! Built-in surface families with known thresholds.
//!
//! * `ross`: `C x C` for a curve of genus `g`, basis `(f, delta')` with
//!   `K = (2g - 2, 0)` and `L_t = (t, -1)`.
//! * `hirzebruch`: `F_a` in the basis `(H, E)` (or `(F, E)` when `a = 0`), with its fan.
//! * `perfect_lightcone`: `diag(1, -1, ..., -1)` whose nef cone is the light cone.
//! * `blowup_path`: the blowup of the plane at a point with the segment from `H` to `2H - E`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cones::{NefConeModel, Surface};
use crate::error::{Error, Result};
use crate::lattice::{DivClass, IntersectionLattice};
use crate::numeric::{int, rat, QuadNum, Rat};
use crate::toric::{Fan, ToricClass};

pub const NAMES: [&str; 4] = ["ross", "hirzebruch", "perfect_lightcone", "blowup_path"];

pub type Params = BTreeMap<String, Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricModel {
    pub fan: Fan,
    /// Lattice class of each ray divisor `D_i`.
    pub dictionary: Vec<DivClass>,
    pub named: BTreeMap<String, ToricClass>,
}

impl ToricModel {
    pub fn to_lattice(&self, c: &ToricClass) -> Result<DivClass> {
        if c.coeffs().len() != self.dictionary.len() {
            return Err(Error::DimensionMismatch {
                expected: self.dictionary.len(),
                found: c.coeffs().len(),
            });
        }
        let rank = self.dictionary[0].rank();
        Ok(c.coeffs()
            .iter()
            .zip(&self.dictionary)
            .fold(DivClass::zero(rank), |acc, (k, d)| {
                acc.combine(&int(1), d, k)
            }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Params,
    pub surface: Surface,
    pub facet_labels: Vec<String>,
    /// Facets that only bound an inner model of the true nef cone.
    pub model_facets: Vec<usize>,
    pub named_classes: BTreeMap<String, DivClass>,
    pub toric: Option<ToricModel>,
}

impl CatalogEntry {
    pub fn lattice(&self) -> &IntersectionLattice {
        self.surface.lattice()
    }

    pub fn class(&self, label: &str) -> Result<&DivClass> {
        self.named_classes
            .get(label)
            .ok_or_else(|| Error::UnknownClass(label.to_string()))
    }
}

fn param<'a>(params: &'a Params, key: &str) -> Result<&'a Rat> {
    params
        .get(key)
        .ok_or_else(|| Error::BadParams(format!("missing parameter {}", key)))
}

fn int_param(params: &Params, key: &str, min: i64) -> Result<i64> {
    let v = param(params, key)?;
    match v.to_integer().to_i64() {
        Some(n) if v.is_integer() && n >= min => Ok(n),
        _ => Err(Error::BadParams(format!(
            "{} must be an integer >= {}, got {}",
            key, min, v
        ))),
    }
}

fn check_known(params: &Params, allowed: &[&str]) -> Result<()> {
    match params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::BadParams(format!("unexpected parameter {}", k))),
        None => Ok(()),
    }
}

pub fn build(name: &str, params: &Params) -> Result<CatalogEntry> {
    match name {
        "ross" => {
            check_known(params, &["g", "sC", "t"])?;
            let g = int_param(params, "g", 2)?;
            let entry = ross(g, param(params, "sC")?)?;
            match params.get("t") {
                Some(t) => entry.with_ross_polarization(t),
                None => Ok(entry),
            }
        }
        "hirzebruch" => {
            check_known(params, &["a"])?;
            hirzebruch(int_param(params, "a", 0)?)
        }
        "perfect_lightcone" => {
            check_known(params, &["rank"])?;
            let rank = if params.contains_key("rank") {
                int_param(params, "rank", 1)?
            } else {
                2
            };
            perfect_lightcone(rank as usize)
        }
        "blowup_path" => {
            check_known(params, &[])?;
            blowup_path()
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

pub fn ross(g: i64, s_c: &Rat) -> Result<CatalogEntry> {
    if g < 2 {
        return Err(Error::BadParams(format!("g must be >= 2, got {}", g)));
    }
    if !s_c.is_positive() || s_c * s_c < int(g) {
        return Err(Error::BadParams(format!(
            "sC = {} must satisfy sC > 0 and sC^2 >= g = {}",
            s_c, g
        )));
    }
    let two_g = int(2 * g);
    let lattice =
        IntersectionLattice::diagonal(&[int(2), -&two_g], Some(vec!["f".into(), "delta'".into()]))?;
    // w_low pairs to x + sC y, w_up to x - g y
    let w_low = DivClass::new(vec![rat(1, 2), -s_c / &two_g]);
    let w_up = DivClass::new(vec![rat(1, 2), rat(1, 2)]);
    let surface = Surface::new(lattice, NefConeModel::new(vec![w_low, w_up], None))?;
    let mut named = BTreeMap::new();
    named.insert("f".into(), DivClass::from_ints(&[1, 0]));
    named.insert("delta'".into(), DivClass::from_ints(&[0, 1]));
    named.insert("K".into(), DivClass::from_ints(&[2 * g - 2, 0]));
    let mut params = Params::new();
    params.insert("g".into(), int(g));
    params.insert("sC".into(), s_c.clone());
    Ok(CatalogEntry {
        name: "ross".into(),
        params,
        surface,
        facet_labels: vec!["w_low".into(), "w_up".into()],
        model_facets: vec![1],
        named_classes: named,
        toric: None,
    })
}

/// `L_t = t f - delta'`.
pub fn ross_polarization(t: &Rat) -> DivClass {
    DivClass::new(vec![t.clone(), int(-1)])
}

impl CatalogEntry {
    fn with_ross_polarization(mut self, t: &Rat) -> Result<Self> {
        let l = ross_polarization(t);
        if !self.surface.is_kahler(&l)? {
            return Err(Error::OutOfDomain(format!("L_t is not ample at t = {}", t)));
        }
        self.params.insert("t".into(), t.clone());
        self.named_classes.insert("L".into(), l);
        Ok(self)
    }
}

/// `2t(2g-2)/(t^2-g) - (2g-2)/(t-sC)`, with `sC` allowed to be a quadratic surd such as `sqrt(g)`.
pub fn ross_gamma_closed_form(g: &Rat, s_c: &QuadNum, t: &Rat) -> Result<QuadNum> {
    let tq = QuadNum::from_rat(t.clone());
    if &tq <= s_c {
        return Err(Error::OutOfDomain(format!(
            "t = {} must exceed sC = {}",
            t, s_c
        )));
    }
    let vol = t * t - g;
    if vol.is_zero() {
        return Err(Error::OutOfDomain(format!("t^2 = g at t = {}", t)));
    }
    let k = int(2) * g - int(2);
    let c = int(2) * t * &k / vol;
    let sigma = (tq.checked_sub(s_c)?).recip()?.mul_rat(&k);
    Ok((-sigma).add_rat(&c))
}

pub fn hirzebruch(a: i64) -> Result<CatalogEntry> {
    if a < 0 {
        return Err(Error::BadParams(format!("a must be >= 0, got {}", a)));
    }
    let (lattice, f_class, e_class, h_class, facets) = if a == 0 {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        let l = IntersectionLattice::new(m, Some(vec!["F".into(), "E".into()]))?;
        let f = DivClass::from_ints(&[1, 0]);
        let e = DivClass::from_ints(&[0, 1]);
        (l, f.clone(), e.clone(), e.clone(), vec![e, f])
    } else {
        let l =
            IntersectionLattice::diagonal(&[int(a), int(-a)], Some(vec!["H".into(), "E".into()]))?;
        let f = DivClass::new(vec![rat(1, a), rat(-1, a)]);
        let e = DivClass::from_ints(&[0, 1]);
        let h = DivClass::from_ints(&[1, 0]);
        (l, f.clone(), e.clone(), h, vec![e, f])
    };
    let surface = Surface::new(lattice, NefConeModel::new(facets, None))?;
    let fan = Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )?;
    let dictionary = vec![
        f_class.clone(),
        e_class.clone(),
        f_class.clone(),
        h_class.clone(),
    ];
    let k = dictionary.iter().fold(DivClass::zero(2), |acc, d| {
        acc.combine(&int(1), d, &int(-1))
    });
    let mut toric_named = BTreeMap::new();
    toric_named.insert("F".into(), ToricClass::ray(4, 0));
    toric_named.insert("E".into(), ToricClass::ray(4, 1));
    toric_named.insert("H".into(), ToricClass::ray(4, 3));
    toric_named.insert("K".into(), ToricClass::from_ints(&[-1, -1, -1, -1]));
    let mut named = BTreeMap::new();
    named.insert("F".into(), f_class);
    named.insert("E".into(), e_class);
    named.insert("H".into(), h_class);
    named.insert("K".into(), k);
    let mut params = Params::new();
    params.insert("a".into(), int(a));
    Ok(CatalogEntry {
        name: "hirzebruch".into(),
        params,
        surface,
        facet_labels: vec!["E".into(), "F".into()],
        model_facets: Vec::new(),
        named_classes: named,
        toric: Some(ToricModel {
            fan,
            dictionary,
            named: toric_named,
        }),
    })
}

pub fn perfect_lightcone(rank: usize) -> Result<CatalogEntry> {
    if rank == 0 {
        return Err(Error::BadParams("rank must be >= 1".into()));
    }
    let mut diag = vec![int(-1); rank];
    diag[0] = Rat::one();
    let lattice = IntersectionLattice::diagonal(&diag, None)?;
    let mut h = vec![Rat::zero(); rank];
    h[0] = Rat::one();
    let h = DivClass::new(h);
    let surface = Surface::new(lattice, NefConeModel::light_cone_only(h.clone()))?;
    let mut named = BTreeMap::new();
    named.insert("H".into(), h);
    let mut params = Params::new();
    params.insert("rank".into(), int(rank as i64));
    Ok(CatalogEntry {
        name: "perfect_lightcone".into(),
        params,
        surface,
        facet_labels: Vec::new(),
        model_facets: Vec::new(),
        named_classes: named,
        toric: None,
    })
}

pub fn blowup_path() -> Result<CatalogEntry> {
    let mut entry = hirzebruch(1)?;
    entry.name = "blowup_path".into();
    entry.params.clear();
    entry.toric = None;
    let named = &mut entry.named_classes;
    named.insert("a".into(), DivClass::from_ints(&[1, 0]));
    named.insert("theta".into(), DivClass::from_ints(&[2, -1]));
    named.insert("minus_c1".into(), DivClass::from_ints(&[-3, 1]));
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{surface_gamma, Status};
    use crate::toric::intersection_number;

    fn params(kv: &[(&str, Rat)]) -> Params {
        kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn ross_entry() {
        let e = build("ross", &params(&[("g", int(4)), ("sC", int(2))])).unwrap();
        assert_eq!(
            e.lattice().matrix(),
            &[vec![int(2), int(0)], vec![int(0), int(-8)]]
        );
        assert_eq!(e.class("K").unwrap(), &DivClass::from_ints(&[6, 0]));
        assert_eq!(e.model_facets, vec![1]);
        assert_eq!(
            build("ross", &params(&[("g", int(3)), ("sC", int(1))])),
            Err(Error::BadParams(
                "sC = 1 must satisfy sC > 0 and sC^2 >= g = 3".into()
            ))
        );
        assert!(matches!(
            build("ross", &params(&[("g", rat(5, 2)), ("sC", int(3))])),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            build("ross", &params(&[("g", int(4))])),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            build("nope", &Params::new()),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn ross_pipeline_matches_closed_form() {
        for (g, s_c, t, expected) in [
            (4, int(2), int(3), rat(6, 5)),
            (4, int(2), int(4), int(1)),
            (4, int(2), int(10), rat(1, 2)),
            (16, rat(16, 3), int(6), int(-27)),
        ] {
            let e = build(
                "ross",
                &params(&[("g", int(g)), ("sC", s_c.clone()), ("t", t.clone())]),
            )
            .unwrap();
            let r =
                surface_gamma(&e.surface, e.class("K").unwrap(), e.class("L").unwrap()).unwrap();
            assert_eq!(r.value, QuadNum::from_rat(expected.clone()));
            let closed = ross_gamma_closed_form(&int(g), &QuadNum::from_rat(s_c), &t).unwrap();
            assert_eq!(closed, QuadNum::from_rat(expected));
        }
    }

    #[test]
    fn closed_form_domain() {
        let two = QuadNum::from_rat(int(2));
        assert!(matches!(
            ross_gamma_closed_form(&int(4), &two, &int(1)),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            ross_gamma_closed_form(&int(4), &two, &int(2)),
            Err(Error::OutOfDomain(_))
        ));
        let sqrt5 = QuadNum::sqrt_rat(&int(5)).unwrap();
        // (2g - 2)/(t + sqrt g) = 8/(3 + sqrt 5) = 6 - 2 sqrt 5
        let v = ross_gamma_closed_form(&int(5), &sqrt5, &int(3)).unwrap();
        assert_eq!(v, QuadNum::new(int(6), int(-2), 5.into()).unwrap());
    }

    #[test]
    fn hirzebruch_agrees_with_toric_engine() {
        for a in 0..=3 {
            let e = hirzebruch(a).unwrap();
            let tm = e.toric.as_ref().unwrap();
            for x in ["H", "E", "F", "K"] {
                for y in ["H", "E", "F", "K"] {
                    let lat = e
                        .lattice()
                        .pair(e.class(x).unwrap(), e.class(y).unwrap())
                        .unwrap();
                    let tor =
                        intersection_number(&tm.fan, &[tm.named[x].clone(), tm.named[y].clone()])
                            .unwrap();
                    assert_eq!(lat, tor, "a = {} {}.{}", a, x, y);
                    assert_eq!(&tm.to_lattice(&tm.named[x]).unwrap(), e.class(x).unwrap());
                }
            }
            let kk = e.lattice().self_pair(e.class("K").unwrap()).unwrap();
            assert_eq!(kk, int(8));
        }
    }

    #[test]
    fn perfect_and_blowup() {
        let p = build("perfect_lightcone", &params(&[("rank", int(3))])).unwrap();
        assert_eq!(p.lattice().rank(), 3);
        assert!(p.surface.cone().facets().is_empty());
        let b = build("blowup_path", &Params::new()).unwrap();
        let r = surface_gamma(
            &b.surface,
            b.class("theta").unwrap(),
            &DivClass::from_ints(&[5, -1]),
        )
        .unwrap();
        assert_eq!(r.status, Status::ExactUnstable);
        assert!(b.surface.is_nef(b.class("a").unwrap()).unwrap());
        assert!(!b.surface.is_kahler(b.class("a").unwrap()).unwrap());
    }
}
