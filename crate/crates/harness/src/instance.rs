//! Seeded random scenes and start families.

use convertor_core::scene::rank;
use convertor_core::{Rational, Scene, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Degeneracies a random scene is allowed to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Position {
    /// Only coincident points are rejected.
    Any,
    /// No three vertices collinear.
    NoCollinear,
    /// No three collinear and no two vertex-pair differences parallel.
    Generic,
}

const MAX_ATTEMPTS: usize = 20_000;
const MAX_DENOMINATOR: i64 = 3;

/// The generator for trial `index` of a run seeded with `seed`. Each trial
/// gets its own stream so trials can be generated independently.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn vertex_label(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("V{i}")
    }
}

fn random_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::new(
        rng.random_range(-bound..=bound),
        rng.random_range(1..=MAX_DENOMINATOR),
    )
}

fn collinear(a: &[Rational], b: &[Rational], c: &[Rational]) -> bool {
    let u: Vec<Rational> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let v: Vec<Rational> = c.iter().zip(a).map(|(x, y)| x - y).collect();
    rank(&[u, v]) < 2
}

/// True iff no three vertices of `scene` lie on a line.
pub fn no_three_collinear(scene: &Scene) -> bool {
    let n = scene.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear(scene.point(i), scene.point(j), scene.point(k)) {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff no two distinct vertex pairs have parallel differences.
pub fn no_parallel_differences(scene: &Scene) -> bool {
    let n = scene.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            if rank(&[scene.difference(i, j), scene.difference(k, l)]) < 2 {
                return false;
            }
        }
    }
    true
}

pub fn affinely_independent(scene: &Scene) -> bool {
    let diffs: Vec<Vec<Rational>> = (1..scene.len()).map(|i| scene.difference(i, 0)).collect();
    rank(&diffs) == diffs.len()
}

pub fn satisfies(scene: &Scene, position: Position) -> bool {
    match position {
        Position::Any => true,
        Position::NoCollinear => no_three_collinear(scene),
        Position::Generic => no_three_collinear(scene) && no_parallel_differences(scene),
    }
}

/// A scene of `n` labeled vertices with coordinates `p/q`, `|p| <= bound`,
/// `1 <= q <= 3`, rejection-sampled until it meets `position`.
pub fn random_scene(
    rng: &mut impl Rng,
    dim: usize,
    n: usize,
    bound: i64,
    position: Position,
) -> Result<Scene> {
    for _ in 0..MAX_ATTEMPTS {
        let vertices = (0..n).map(|i| {
            let point = (0..dim)
                .map(|_| random_rational(rng, bound))
                .collect::<Vec<_>>();
            (vertex_label(i), point)
        });
        match Scene::new(dim, vertices) {
            Ok(scene) if satisfies(&scene, position) => return Ok(scene),
            _ => continue,
        }
    }
    Err(HarnessError::InvalidConfig(format!(
        "no {n}-vertex scene in dimension {dim} with bound {bound} satisfies {position:?}"
    )))
}

/// `dim + 1` affinely independent vertices.
pub fn random_simplex_scene(rng: &mut impl Rng, dim: usize, bound: i64) -> Result<Scene> {
    for _ in 0..MAX_ATTEMPTS {
        let scene = random_scene(rng, dim, dim + 1, bound, Position::Any)?;
        if affinely_independent(&scene) {
            return Ok(scene);
        }
    }
    Err(HarnessError::InvalidConfig(format!(
        "no affinely independent simplex in dimension {dim} with bound {bound}"
    )))
}

/// `count` uniformly random nonempty vertex subsets (duplicates possible).
pub fn random_sets(rng: &mut impl Rng, n: usize, count: usize) -> Vec<VertexSet> {
    let full = VertexSet::full(n).bits();
    (0..count)
        .map(|_| loop {
            let bits = rng.random::<u64>() & full;
            if bits != 0 {
                break VertexSet::from_bits(bits);
            }
        })
        .collect()
}
