use num_traits::{Signed, Zero};

use super::engine::{Intersector, ToricClass};
use crate::error::{Error, Result};
use crate::numeric::Rat;
use crate::surface::Status;

/// The score of the orbit closure `V(sigma)`, of dimension `p = n - |sigma|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubvarietyScore {
    pub cone: Vec<usize>,
    pub p: usize,
    /// `C int_V omega^p - p int_V theta omega^(p-1)`.
    pub numerator: Rat,
    /// `(n - p) int_V omega^p`.
    pub denominator: Rat,
    pub value: Rat,
}

/// `C = n (theta . omega^(n-1)) / omega^n`.
pub fn toric_c_constant(
    eng: &mut Intersector,
    theta: &ToricClass,
    omega: &ToricClass,
) -> Result<Rat> {
    let n = eng.fan().dim();
    let top = eng.intersect(&vec![omega; n])?;
    if top.is_zero() {
        return Err(Error::ZeroVolume);
    }
    let mut mixed = vec![omega; n - 1];
    mixed.push(theta);
    Ok(Rat::from_integer(n.into()) * eng.intersect(&mixed)? / top)
}

fn score_with(
    eng: &mut Intersector,
    c: &Rat,
    theta: &ToricClass,
    omega: &ToricClass,
    sigma: &[usize],
) -> Result<SubvarietyScore> {
    let n = eng.fan().dim();
    if sigma.is_empty() || sigma.len() > n {
        return Err(Error::FanInvalid(format!(
            "{:?} is not a proper orbit",
            sigma
        )));
    }
    let p = n - sigma.len();
    let vol = eng.restricted(sigma, &vec![omega; p])?;
    if !vol.is_positive() {
        return Err(Error::OmegaNotAmpleOnOrbit(sigma.to_vec()));
    }
    let mixed = if p == 0 {
        Rat::zero()
    } else {
        let mut cls = vec![omega; p - 1];
        cls.push(theta);
        eng.restricted(sigma, &cls)?
    };
    let numerator = c * &vol - Rat::from_integer(p.into()) * mixed;
    let denominator = Rat::from_integer((n - p).into()) * vol;
    let value = &numerator / &denominator;
    Ok(SubvarietyScore {
        cone: sigma.to_vec(),
        p,
        numerator,
        denominator,
        value,
    })
}

pub fn subvariety_score(
    eng: &mut Intersector,
    theta: &ToricClass,
    omega: &ToricClass,
    sigma: &[usize],
) -> Result<SubvarietyScore> {
    let c = toric_c_constant(eng, theta, omega)?;
    score_with(eng, &c, theta, omega, sigma)
}

/// Strict Kleiman positivity on every invariant curve.
pub fn is_ample(eng: &mut Intersector, d: &ToricClass) -> Result<bool> {
    d.check(eng.fan())?;
    for wall in eng.fan().walls() {
        if !eng.restricted(&wall, &[d])?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_nef(eng: &mut Intersector, d: &ToricClass) -> Result<bool> {
    d.check(eng.fan())?;
    for wall in eng.fan().walls() {
        if eng.restricted(&wall, &[d])?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T(theta, omega) = min over invariant curves C of theta.C / omega.C`, with the binding wall.
pub fn toric_seshadri_t(
    eng: &mut Intersector,
    theta: &ToricClass,
    omega: &ToricClass,
) -> Result<(Rat, Vec<usize>)> {
    if !is_ample(eng, omega)? {
        return Err(Error::OmegaNotKahler);
    }
    theta.check(eng.fan())?;
    let mut best: Option<(Rat, Vec<usize>)> = None;
    for wall in eng.fan().walls() {
        let ratio = eng.restricted(&wall, &[theta])? / eng.restricted(&wall, &[omega])?;
        if best.as_ref().is_none_or(|(b, _)| &ratio < b) {
            best = Some((ratio, wall));
        }
    }
    Ok(best.expect("a complete fan of dimension >= 1 has walls"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricThreshold {
    pub value: Rat,
    pub minimizer: Vec<usize>,
    pub scores: Vec<SubvarietyScore>,
    pub status: Status,
    pub c: Rat,
    pub t: Rat,
    pub t_wall: Vec<usize>,
    pub theta_ample: bool,
}

/// Minimum of the orbit scores; the first orbit in enumeration order wins ties.
pub fn toric_gamma(
    eng: &mut Intersector,
    theta: &ToricClass,
    omega: &ToricClass,
) -> Result<ToricThreshold> {
    let (t, t_wall) = toric_seshadri_t(eng, theta, omega)?;
    let c = toric_c_constant(eng, theta, omega)?;
    let scores = eng
        .fan()
        .enumerate_orbits()
        .iter()
        .map(|sigma| score_with(eng, &c, theta, omega, sigma))
        .collect::<Result<Vec<_>>>()?;
    let best = scores
        .iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .expect("a fan has orbits");
    let value = best.value.clone();
    let minimizer = best.cone.clone();
    let theta_ample = is_ample(eng, theta)?;
    let status = match (theta_ample, value.is_positive()) {
        (true, false) => Status::ExactUnstable,
        (true, true) => Status::Solvable,
        (false, _) if value < t => Status::ConditionalExact,
        (false, _) => Status::Indeterminate,
    };
    Ok(ToricThreshold {
        value,
        minimizer,
        scores,
        status,
        c,
        t,
        t_wall,
        theta_ample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::toric::Fan;

    fn f1() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    fn p2() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    // H = D4, E = D2 on F1
    fn hv(h: i64, e: i64) -> ToricClass {
        ToricClass::from_ints(&[0, e, 0, h])
    }

    #[test]
    fn f1_scores() {
        let f = f1();
        let mut eng = Intersector::new(&f);
        let theta = hv(2, -1);
        let omega = hv(5, -1);
        assert_eq!(
            toric_c_constant(&mut eng, &theta, &omega).unwrap(),
            rat(3, 4)
        );
        let e = subvariety_score(&mut eng, &theta, &omega, &[1]).unwrap();
        assert_eq!(
            (e.numerator.clone(), e.denominator.clone()),
            (rat(-1, 4), int(1))
        );
        assert_eq!(e.value, rat(-1, 4));
        assert_eq!(
            subvariety_score(&mut eng, &theta, &omega, &[0])
                .unwrap()
                .value,
            rat(1, 2)
        );
        assert_eq!(
            subvariety_score(&mut eng, &theta, &omega, &[3])
                .unwrap()
                .value,
            rat(7, 20)
        );
        let pt = subvariety_score(&mut eng, &theta, &omega, &[0, 1]).unwrap();
        assert_eq!((pt.p, pt.value), (0, rat(3, 8)));

        let g = toric_gamma(&mut eng, &theta, &omega).unwrap();
        assert_eq!(g.value, rat(-1, 4));
        assert_eq!(g.minimizer, vec![1]);
        assert_eq!(g.status, Status::ExactUnstable);
        assert_eq!(g.scores.len(), 8);
        assert_eq!(g.t, rat(1, 4));
    }

    #[test]
    fn equal_classes_score_one() {
        let f = f1();
        let mut eng = Intersector::new(&f);
        let omega = hv(3, -1);
        let g = toric_gamma(&mut eng, &omega, &omega).unwrap();
        assert!(g.scores.iter().all(|s| s.value == int(1)));
        assert_eq!(g.minimizer, vec![0]);
        assert_eq!(g.status, Status::Solvable);
    }

    #[test]
    fn projective_plane_multiples() {
        let f = p2();
        let mut eng = Intersector::new(&f);
        let h = ToricClass::from_ints(&[1, 0, 0]);
        for a in 1..4 {
            let theta = ToricClass::from_ints(&[a, 0, 0]);
            let g = toric_gamma(&mut eng, &theta, &h).unwrap();
            assert_eq!(g.value, int(a));
            assert_eq!(g.status, Status::Solvable);
        }
    }

    #[test]
    fn ampleness() {
        let f = f1();
        let mut eng = Intersector::new(&f);
        assert!(is_ample(&mut eng, &hv(2, -1)).unwrap());
        assert!(!is_ample(&mut eng, &hv(1, 0)).unwrap());
        assert!(is_nef(&mut eng, &hv(1, 0)).unwrap());
        assert!(!is_nef(&mut eng, &hv(0, 1)).unwrap());
        assert_eq!(
            toric_gamma(&mut eng, &hv(2, -1), &hv(1, 0)),
            Err(Error::OmegaNotKahler)
        );
        assert_eq!(
            subvariety_score(&mut eng, &hv(2, -1), &hv(1, 0), &[1]),
            Err(Error::OmegaNotAmpleOnOrbit(vec![1]))
        );
    }

    #[test]
    fn non_ample_theta() {
        let f = f1();
        let mut eng = Intersector::new(&f);
        // -H against 5H - E
        let g = toric_gamma(&mut eng, &hv(-1, 0), &hv(5, -1)).unwrap();
        assert!(!g.theta_ample);
        assert_eq!(g.t, rat(-1, 4));
        assert_eq!(g.value, rat(-5, 12));
        assert_eq!(g.status, Status::ConditionalExact);
    }
}
