//! Threshold computations on a surface with a nef cone model.
//!
//! The formula value is `c(theta, omega) = C - sigma(theta, omega)` with
//! `C = 2 theta.omega / omega^2`. Its certification depends on whether
//! `theta` is Kähler, see [`Status`].

use std::fmt;

use num_traits::{Signed, Zero};

use crate::cones::{ConeConstants, Facet, Surface};
use crate::error::{Error, Result};
use crate::lattice::{DivClass, IntersectionLattice, QuadClass};
use crate::numeric::{int, rat, QuadNum, Rat, RatPoly};

pub const CSCK_CAVEAT: &str = "requires discrete automorphism group";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// `theta` Kähler and `c <= 0`: the threshold equals `c`.
    ExactUnstable,
    /// `theta` Kähler and `c > 0`: the J-equation is solvable.
    Solvable,
    /// `theta` not Kähler and `c < T`: the necessary hypothesis holds, equality is not asserted.
    ConditionalExact,
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ExactUnstable => "ExactUnstable",
            Status::Solvable => "Solvable",
            Status::ConditionalExact => "ConditionalExact",
            Status::Indeterminate => "Indeterminate",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Audit {
    pub c: Rat,
    pub sigma: QuadNum,
    pub t: QuadNum,
    pub theta_kahler: bool,
    pub sigma_facet: Facet,
    pub t_facet: Facet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdResult {
    pub value: QuadNum,
    pub status: Status,
    pub audit: Audit,
}

impl ThresholdResult {
    /// Whether the analytic and algebraic thresholds are known to agree with `value`.
    pub fn algebraic_threshold_coincides(&self) -> bool {
        self.status == Status::ExactUnstable
    }
}

pub fn c_constant(
    lattice: &IntersectionLattice,
    theta: &DivClass,
    omega: &DivClass,
) -> Result<Rat> {
    let ww = lattice.self_pair(omega)?;
    if ww.is_zero() {
        return Err(Error::ZeroVolume);
    }
    Ok(int(2) * lattice.pair(theta, omega)? / ww)
}

pub fn surface_gamma(
    surface: &Surface,
    theta: &DivClass,
    omega: &DivClass,
) -> Result<ThresholdResult> {
    let ConeConstants {
        t,
        sigma,
        t_facet,
        sigma_facet,
    } = surface.cone_constants(theta, omega)?;
    let c = c_constant(surface.lattice(), theta, omega)?;
    let value = (-&sigma).add_rat(&c);
    let theta_kahler = surface.is_kahler(theta)?;
    let status = match (theta_kahler, value.sign() > 0) {
        (true, false) => Status::ExactUnstable,
        (true, true) => Status::Solvable,
        (false, _) if value < t => Status::ConditionalExact,
        (false, _) => Status::Indeterminate,
    };
    Ok(ThresholdResult {
        value,
        status,
        audit: Audit {
            c,
            sigma,
            t,
            theta_kahler,
            sigma_facet,
            t_facet,
        },
    })
}

/// Whether `C omega - theta` is Kähler.
pub fn is_solvable(surface: &Surface, theta: &DivClass, omega: &DivClass) -> Result<bool> {
    surface.require_kahler_omega(omega)?;
    if !surface.is_kahler(theta)? {
        return Err(Error::ThetaNotKahler);
    }
    let c = c_constant(surface.lattice(), theta, omega)?;
    surface.is_kahler(&omega.combine(&c, theta, &int(-1)))
}

/// An interval of the real line with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: QuadNum,
    pub hi: QuadNum,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn contains(&self, x: &QuadNum) -> bool {
        let above = if self.lo_closed {
            x >= &self.lo
        } else {
            x > &self.lo
        };
        let below = if self.hi_closed {
            x <= &self.hi
        } else {
            x < &self.hi
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathAnalysis {
    /// `(theta^2 - a^2) t^2 + 2 a^2 t - a^2`.
    pub numerator: RatPoly,
    pub a_selfint: Rat,
    pub theta_selfint: Rat,
    /// `{ t in (0, 1] : numerator(t) > 0 }`.
    pub solvable_set: Vec<Interval>,
}

impl PathAnalysis {
    pub fn contains(&self, t: &Rat) -> bool {
        let t = QuadNum::from_rat(t.clone());
        self.solvable_set.iter().any(|i| i.contains(&t))
    }
}

/// `omega_t = (1 - t) a + t theta`.
pub fn path_class(a: &DivClass, theta: &DivClass, t: &Rat) -> DivClass {
    a.combine(&(int(1) - t), theta, t)
}

fn require_boundary(surface: &Surface, a: &DivClass) -> Result<()> {
    if !surface.is_nef(a)? || surface.is_kahler(a)? {
        return Err(Error::ANotOnBoundary);
    }
    Ok(())
}

fn require_theta(surface: &Surface, theta: &DivClass) -> Result<()> {
    if !surface.is_kahler(theta)? {
        return Err(Error::ThetaNotKahler);
    }
    Ok(())
}

pub fn path_r(surface: &Surface, theta: &DivClass, a: &DivClass) -> Result<PathAnalysis> {
    require_theta(surface, theta)?;
    require_boundary(surface, a)?;
    let l = surface.lattice();
    let aa = l.self_pair(a)?;
    if aa.is_negative() {
        return Err(Error::NegativeSelfIntersection);
    }
    let tt = l.self_pair(theta)?;
    let numerator = RatPoly::new(vec![-&aa, int(2) * &aa, &tt - &aa]);
    let solvable_set = positive_part_on_unit(&numerator)?;
    Ok(PathAnalysis {
        numerator,
        a_selfint: aa,
        theta_selfint: tt,
        solvable_set,
    })
}

/// Maximal intervals of `(0, 1]` on which `p > 0`.
fn positive_part_on_unit(p: &RatPoly) -> Result<Vec<Interval>> {
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let zero = QuadNum::zero();
    let one = QuadNum::one();
    let mut cuts = vec![zero.clone()];
    cuts.extend(
        p.roots_quadratic()?
            .into_iter()
            .filter(|r| r > &zero && r < &one),
    );
    cuts.push(one.clone());
    let half = rat(1, 2);
    let mut out: Vec<Interval> = Vec::new();
    for w in cuts.windows(2) {
        let mid = w[0].checked_add(&w[1])?.mul_rat(&half);
        if p.eval_quad(&mid).sign() <= 0 {
            continue;
        }
        out.push(Interval {
            lo: w[0].clone(),
            hi: w[1].clone(),
            lo_closed: false,
            hi_closed: false,
        });
    }
    if let Some(last) = out.last_mut() {
        if last.hi == one && p.eval(&int(1)).is_positive() {
            last.hi_closed = true;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSubcone {
    pub boundary_t: Rat,
    /// `lambda` with `(lambda a)^2 = theta^2`.
    pub normalization: QuadNum,
    /// `(lambda a + theta) / 2`.
    pub boundary_ray: QuadClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SubconeOutcome {
    Subcone(StableSubcone),
    /// `a^2 = 0`: every Kähler class on the segment is stable.
    Perfect,
}

pub fn stable_subcone(surface: &Surface, theta: &DivClass, a: &DivClass) -> Result<SubconeOutcome> {
    require_theta(surface, theta)?;
    require_boundary(surface, a)?;
    let l = surface.lattice();
    let aa = l.self_pair(a)?;
    if aa.is_negative() {
        return Err(Error::NegativeSelfIntersection);
    }
    if aa.is_zero() {
        return Ok(SubconeOutcome::Perfect);
    }
    let lambda = QuadNum::sqrt_rat(&(l.self_pair(theta)? / aa))?;
    let half = rat(1, 2);
    let ray = a
        .coords()
        .iter()
        .zip(theta.coords())
        .map(|(x, y)| lambda.mul_rat(x).add_rat(y).mul_rat(&half))
        .collect();
    Ok(SubconeOutcome::Subcone(StableSubcone {
        boundary_t: half,
        normalization: lambda,
        boundary_ray: QuadClass(ray),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsckReport {
    pub holds: bool,
    pub lhs: QuadNum,
    pub rhs: Rat,
    pub caveat: &'static str,
}

/// Tests `min(c(-c1, omega), T(-c1, omega)) > -(3/2) alpha`.
pub fn csck_criterion(
    surface: &Surface,
    minus_c1: &DivClass,
    omega: &DivClass,
    alpha: &Rat,
) -> Result<CsckReport> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveAlpha);
    }
    let g = surface_gamma(surface, minus_c1, omega)?;
    let lhs = std::cmp::min(g.value, g.audit.t);
    let rhs = rat(-3, 2) * alpha;
    Ok(CsckReport {
        holds: lhs > QuadNum::from_rat(rhs.clone()),
        lhs,
        rhs,
        caveat: CSCK_CAVEAT,
    })
}

/// `t = k / n` for `k = 1..=n`.
pub fn default_grid(n: u32) -> Vec<Rat> {
    (1..=n).map(|k| rat(k as i64, n as i64)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSample {
    pub t: Rat,
    pub numerator: Rat,
    pub value: QuadNum,
    pub solvable: bool,
}

/// Evaluates the formula along `omega_t` at each `t` of `grid`, which must lie in `(0, 1]`.
pub fn sample_path(
    surface: &Surface,
    theta: &DivClass,
    a: &DivClass,
    grid: &[Rat],
) -> Result<Vec<PathSample>> {
    let analysis = path_r(surface, theta, a)?;
    grid.iter()
        .map(|t| {
            if !t.is_positive() || t > &int(1) {
                return Err(Error::OutOfDomain(format!(
                    "sample t = {} outside (0, 1]",
                    t
                )));
            }
            let omega = path_class(a, theta, t);
            let value = surface_gamma(surface, theta, &omega)?.value;
            let numerator = analysis.numerator.eval(t);
            Ok(PathSample {
                t: t.clone(),
                solvable: numerator.is_positive(),
                numerator,
                value,
            })
        })
        .collect()
}
