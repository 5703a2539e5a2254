use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::linalg::{det, dot, inverse, mat_vec, to_rat_matrix, transpose};
use crate::error::{Error, Result};
use crate::numeric::Rat;

/// A complete smooth fan, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    /// `dual[c][k]` pairs to 1 with the `k`-th ray of cone `c` and to 0 with its other rays.
    dual: Vec<Vec<Vec<Rat>>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        let fan = Fan::unchecked(dim, rays, max_cones)?;
        fan.check_faces()?;
        fan.check_covering()?;
        Ok(fan)
    }

    /// Checks ray primitivity and smoothness of each cone and builds the dual bases.
    fn unchecked(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::FanInvalid("dimension must be positive".into()));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            if r.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
                return Err(Error::NonPrimitiveRay(i));
            }
        }
        if max_cones.is_empty() {
            return Err(Error::NotComplete);
        }
        let mut seen = BTreeSet::new();
        let mut cones = Vec::with_capacity(max_cones.len());
        let mut dual = Vec::with_capacity(max_cones.len());
        for (c, cone) in max_cones.into_iter().enumerate() {
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != dim || cone.len() != dim {
                return Err(Error::FanInvalid(format!(
                    "cone {} must have {} distinct rays",
                    c, dim
                )));
            }
            if let Some(&bad) = sorted.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::FanInvalid(format!(
                    "cone {} uses unknown ray {}",
                    c, bad
                )));
            }
            if !seen.insert(sorted.clone()) {
                return Err(Error::FanInvalid(format!("cone {} is listed twice", c)));
            }
            let rows: Vec<&[i64]> = sorted.iter().map(|&i| rays[i].as_slice()).collect();
            let u = to_rat_matrix(&rows);
            if det(&u).abs() != Rat::from_integer(1.into()) {
                return Err(Error::NotSmooth(c));
            }
            let m = inverse(&transpose(&u)).expect("unimodular");
            cones.push(sorted);
            dual.push(m);
        }
        if let Some(unused) = (0..rays.len()).find(|i| !cones.iter().any(|c| c.contains(i))) {
            return Err(Error::FanInvalid(format!("ray {} lies in no cone", unused)));
        }
        Ok(Fan {
            dim,
            rays,
            max_cones: cones,
            dual,
        })
    }

    /// Every wall lies in exactly two cones, whose remaining rays lie on opposite sides.
    fn check_faces(&self) -> Result<()> {
        let mut walls: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            for &opp in cone {
                let wall: Vec<usize> = cone.iter().copied().filter(|&i| i != opp).collect();
                walls.entry(wall).or_default().push((c, opp));
            }
        }
        for (wall, owners) in &walls {
            match owners.len() {
                1 => return Err(Error::NotComplete),
                2 => {
                    let normal = self.wall_normal(wall);
                    let side = |i: usize| dot(&normal, &self.ray_rat(i)).signum();
                    if side(owners[0].1) == side(owners[1].1) {
                        return Err(Error::BadFace(format!(
                            "cones {} and {} overlap across wall {:?}",
                            owners[0].0, owners[1].0, wall
                        )));
                    }
                }
                _ => {
                    return Err(Error::BadFace(format!(
                        "wall {:?} lies in {} cones",
                        wall,
                        owners.len()
                    )))
                }
            }
        }
        Ok(())
    }

    /// A generic point of the moment curve lies in exactly one cone.
    fn check_covering(&self) -> Result<()> {
        let budget = (self.max_cones.len() * self.dim * self.dim + 2) as i64;
        for s in 2..budget + 2 {
            let p: Vec<Rat> = (0..self.dim as u32)
                .map(|k| Rat::from_integer(num_traits::pow(s.into(), k as usize)))
                .collect();
            let coords: Vec<Vec<Rat>> = self.dual.iter().map(|m| mat_vec(m, &p)).collect();
            if coords.iter().flatten().any(Zero::is_zero) {
                continue;
            }
            let hits = coords
                .iter()
                .filter(|c| c.iter().all(Signed::is_positive))
                .count();
            return match hits {
                1 => Ok(()),
                0 => Err(Error::NotComplete),
                k => Err(Error::BadFace(format!("{} cones overlap", k))),
            };
        }
        unreachable!("moment curve meets each wall hyperplane in finitely many points")
    }

    /// Cofactor normal of the hyperplane spanned by `wall` (`dim - 1` rays).
    fn wall_normal(&self, wall: &[usize]) -> Vec<Rat> {
        (0..self.dim)
            .map(|j| {
                let mut rows: Vec<Vec<Rat>> = wall.iter().map(|&i| self.ray_rat(i)).collect();
                let mut e = vec![Rat::zero(); self.dim];
                e[j] = Rat::from_integer(1.into());
                rows.push(e);
                det(&rows)
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Maximal cones as sorted ray index sets, in input order.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub(crate) fn ray_rat(&self, i: usize) -> Vec<Rat> {
        self.rays[i]
            .iter()
            .map(|&x| Rat::from_integer(x.into()))
            .collect()
    }

    /// `<m, u_i>`.
    pub fn pair_ray(&self, m: &[Rat], i: usize) -> Rat {
        m.iter()
            .zip(&self.rays[i])
            .map(|(a, &b)| a * Rat::from_integer(b.into()))
            .sum()
    }

    /// Index of the first maximal cone containing every ray of `support`.
    pub fn cone_containing(&self, support: &[usize]) -> Option<usize> {
        self.max_cones
            .iter()
            .position(|c| support.iter().all(|i| c.binary_search(i).is_ok()))
    }

    pub fn is_cone(&self, support: &[usize]) -> bool {
        self.cone_containing(support).is_some()
    }

    pub(crate) fn dual_of(&self, cone: usize, ray: usize) -> &[Rat] {
        let pos = self.max_cones[cone]
            .binary_search(&ray)
            .expect("ray belongs to cone");
        &self.dual[cone][pos]
    }

    /// Cones of dimension `1..=dim`, ordered by dimension then lexicographically.
    pub fn enumerate_orbits(&self) -> Vec<Vec<usize>> {
        let mut faces: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for cone in &self.max_cones {
            for mask in 1u64..(1 << self.dim) {
                let face: Vec<usize> = cone
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                faces.insert((face.len(), face));
            }
        }
        faces.into_iter().map(|(_, f)| f).collect()
    }

    /// Cones of dimension `dim - 1`, whose orbit closures are the invariant curves.
    pub fn walls(&self) -> Vec<Vec<usize>> {
        self.enumerate_orbits()
            .into_iter()
            .filter(|c| c.len() + 1 == self.dim)
            .collect()
    }
}
