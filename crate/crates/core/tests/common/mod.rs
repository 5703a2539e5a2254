//! Seeded random surfaces, cone models and classes for property tests.
#![allow(dead_code)]

use jthresh::cones::{NefConeModel, Surface};
use jthresh::lattice::{DivClass, IntersectionLattice};
use jthresh::numeric::{int, rat, Rat};
use jthresh::toric::{is_ample, Fan, Intersector, ToricClass};
use num_traits::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A lattice `B^T diag(p, -n_1, ..) B` with `B` unipotent upper triangular,
/// so classes can be drawn in the diagonal frame and mapped back with `B^-1`.
pub struct Frame {
    pub diag: Vec<i64>,
    pub b: Vec<Vec<i64>>,
}

impl Frame {
    pub fn random(rng: &mut impl Rng, rank: usize) -> Self {
        let mut diag = vec![rng.gen_range(1..=4)];
        diag.extend((1..rank).map(|_| -rng.gen_range(1..=4)));
        let b = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| match j.cmp(&i) {
                        std::cmp::Ordering::Less => 0,
                        std::cmp::Ordering::Equal => 1,
                        std::cmp::Ordering::Greater => rng.gen_range(-2..=2),
                    })
                    .collect()
            })
            .collect();
        Frame { diag, b }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn lattice(&self) -> IntersectionLattice {
        let r = self.rank();
        let m = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        int((0..r)
                            .map(|k| self.b[k][i] * self.diag[k] * self.b[k][j])
                            .sum())
                    })
                    .collect()
            })
            .collect();
        IntersectionLattice::new(m, None).expect("hyperbolic by construction")
    }

    /// Solves `B x = v`.
    pub fn lift(&self, v: &[Rat]) -> DivClass {
        let r = self.rank();
        let mut x = vec![Rat::from_integer(0.into()); r];
        for i in (0..r).rev() {
            let tail: Rat = (i + 1..r).map(|j| int(self.b[i][j]) * &x[j]).sum();
            x[i] = &v[i] - tail;
        }
        DivClass::new(x)
    }

    pub fn lift_ints(&self, v: &[i64]) -> DivClass {
        self.lift(&v.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }
}

pub struct Instance {
    pub frame: Frame,
    pub surface: Surface,
    pub reference: DivClass,
}

#[derive(Clone, Copy, Debug)]
pub enum ConeKind {
    Linear,
    LightCone,
    Mixed,
}

pub fn random_instance(rng: &mut impl Rng, kind: ConeKind) -> Instance {
    let rank = rng.gen_range(2..=4);
    let frame = Frame::random(rng, rank);
    let mut e0 = vec![0; rank];
    e0[0] = 1;
    let reference = frame.lift_ints(&e0);
    let facets = match kind {
        ConeKind::LightCone => Vec::new(),
        ConeKind::Linear | ConeKind::Mixed => (0..rng.gen_range(1..=4))
            .map(|_| {
                let mut f: Vec<i64> = (0..rank).map(|_| rng.gen_range(-3..=3)).collect();
                f[0] = rng.gen_range(1..=3);
                frame.lift_ints(&f)
            })
            .collect(),
    };
    let light = match kind {
        ConeKind::Linear => None,
        _ => Some(reference.clone()),
    };
    let surface =
        Surface::new(frame.lattice(), NefConeModel::new(facets, light)).expect("valid model");
    Instance {
        frame,
        surface,
        reference,
    }
}

/// Any class, Kähler or not.
pub fn random_class(rng: &mut impl Rng, inst: &Instance) -> DivClass {
    let v: Vec<Rat> = (0..inst.frame.rank())
        .map(|_| rat(rng.gen_range(-12..=12), rng.gen_range(1..=3)))
        .collect();
    inst.frame.lift(&v)
}

/// A Kähler class near a multiple of the reference class, by rejection.
pub fn random_kahler(rng: &mut impl Rng, inst: &Instance) -> DivClass {
    loop {
        let mut v: Vec<Rat> = (0..inst.frame.rank())
            .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            .collect();
        v[0] = int(rng.gen_range(4..=16));
        let c = inst.frame.lift(&v);
        if inst.surface.is_kahler(&c).unwrap()
            && inst.surface.lattice().self_pair(&c).unwrap().is_positive()
        {
            return c;
        }
    }
}

pub fn random_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rat {
    rat(rng.gen_range(lo * 12..=hi * 12), 12)
}

pub fn p2() -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
    )
    .unwrap()
}

pub fn hirzebruch_fan(a: i64) -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

pub fn p1_cubed() -> Fan {
    let mut rays = Vec::new();
    for k in 0..3 {
        for s in [1, -1] {
            let mut v = vec![0; 3];
            v[k] = s;
            rays.push(v);
        }
    }
    let mut cones = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                cones.push(vec![a, b, c]);
            }
        }
    }
    Fan::new(3, rays, cones).unwrap()
}

/// Blowup of the plane in two torus-fixed points.
pub fn p2_blown_up_twice() -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
    )
    .unwrap()
}

pub fn random_toric_class(rng: &mut impl Rng, fan: &Fan) -> ToricClass {
    ToricClass::new(
        (0..fan.num_rays())
            .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=2)))
            .collect(),
    )
}

pub fn random_ample(rng: &mut impl Rng, eng: &mut Intersector) -> ToricClass {
    loop {
        let c = ToricClass::new(
            (0..eng.fan().num_rays())
                .map(|_| int(rng.gen_range(0..=5)))
                .collect(),
        );
        if is_ample(eng, &c).unwrap() {
            return c;
        }
    }
}
