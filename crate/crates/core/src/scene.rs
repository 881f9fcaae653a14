//! Labeled point sets with exact coordinates.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// The vertex universe: `n`-dimensional points with distinct labels and
/// distinct coordinates. Vertices are indexed by the sorted order of their
/// labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    dim: usize,
    labels: Vec<String>,
    points: Vec<Vec<Rational>>,
}

impl Scene {
    pub fn new<L, I>(dim: usize, vertices: I) -> Result<Self>
    where
        L: Into<String>,
        I: IntoIterator<Item = (L, Vec<Rational>)>,
    {
        if dim == 0 {
            return Err(Error::InvalidScene("dimension must be positive".to_owned()));
        }
        let mut entries: Vec<(String, Vec<Rational>)> =
            vertices.into_iter().map(|(l, p)| (l.into(), p)).collect();
        if entries.is_empty() {
            return Err(Error::InvalidScene("no vertices".to_owned()));
        }
        if entries.len() > MAX_VERTICES {
            return Err(Error::InvalidScene(format!(
                "{} vertices, at most {MAX_VERTICES} supported",
                entries.len()
            )));
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidScene(format!(
                    "duplicate label `{}`",
                    pair[0].0
                )));
            }
        }
        for (label, point) in &entries {
            if label.is_empty() {
                return Err(Error::InvalidScene("empty label".to_owned()));
            }
            if point.len() != dim {
                return Err(Error::InvalidScene(format!(
                    "vertex `{label}` has {} coordinates, expected {dim}",
                    point.len()
                )));
            }
        }
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                if entries[i].1 == entries[j].1 {
                    return Err(Error::InvalidScene(format!(
                        "vertices `{}` and `{}` coincide",
                        entries[i].0, entries[j].0
                    )));
                }
            }
        }
        let (labels, points) = entries.into_iter().unzip();
        Ok(Scene {
            dim,
            labels,
            points,
        })
    }

    /// Integer-coordinate convenience constructor.
    pub fn from_integers<L: Into<String>>(
        dim: usize,
        vertices: impl IntoIterator<Item = (L, Vec<i64>)>,
    ) -> Result<Self> {
        Scene::new(
            dim,
            vertices.into_iter().map(|(l, p)| {
                (
                    l,
                    p.into_iter()
                        .map(Rational::from_integer)
                        .collect::<Vec<_>>(),
                )
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn point(&self, index: usize) -> &[Rational] {
        &self.points[index]
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// The set of every vertex.
    pub fn universe(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::UnknownLabel(label.to_owned()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<VertexSet> {
        let mut set = VertexSet::EMPTY;
        for label in labels {
            set.insert(self.index_of(label.as_ref())?);
        }
        Ok(set)
    }

    pub fn labels_of(&self, set: VertexSet) -> Vec<&str> {
        set.iter().map(|i| self.label(i)).collect()
    }

    pub fn check_set(&self, set: VertexSet) -> Result<()> {
        match set.difference(self.universe()).first() {
            Some(i) => Err(Error::UnknownVertex(i)),
            None => Ok(()),
        }
    }

    /// `<point(index), direction>`.
    pub fn project(&self, index: usize, direction: &[Rational]) -> Rational {
        dot(&self.points[index], direction)
    }

    /// `point(a) - point(b)`.
    pub fn difference(&self, a: usize, b: usize) -> Vec<Rational> {
        self.points[a]
            .iter()
            .zip(&self.points[b])
            .map(|(x, y)| x - y)
            .collect()
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of a list of row vectors, by exact Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..cols {
                let delta = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Some nonzero vector orthogonal to every row, if one exists.
#[allow(clippy::needless_range_loop)]
pub fn orthogonal_vector(rows: &[Vec<Rational>], dim: usize) -> Option<Vec<Rational>> {
    // Reduced row echelon form; a free column yields a nullspace vector.
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for c in col..dim {
            m[rank][c] = &m[rank][c] / &pivot;
        }
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..dim {
                let delta = &factor * &m[rank][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut v = alloc::vec![Rational::zero(); dim];
    v[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -&m[r][free];
    }
    Some(v)
}
