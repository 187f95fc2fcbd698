//! Geometry of the non-negativity region: the convex polytope of Bloch
//! vectors whose joint quasiprobability table has no negative entries.
//!
//! The region is cut out by the n^{n+1} inequalities 1 + Σ_i z_{k_i}·θ_i ≥ 0,
//! one per outcome tuple. Its claimed vertices are the Bloch vectors of the
//! MUB basis states: block i equal to one outcome tuple, all other blocks
//! zero. This module checks membership, vertex properties, the vertex–facet
//! incidence structure (facets and edges), and probes hull equality with a
//! simplex LP.

use serde::Serialize;

use crate::csco::CscoBasis;
use crate::error::Error;
use crate::rng::Rng;
use crate::simplex::{solve, LpProblem};
use crate::state::BlochState;
use crate::Result;

/// Identifies the inequality 1 + Σ_i z_{k_i}·θ_i ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetIndex {
    pub tuple: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, Serialize)]
pub struct Membership {
    pub location: Location,
    /// 1 + Σ_i min_z(z·θ_i): positive inside, zero on the boundary.
    pub margin: f64,
}

const BOUNDARY_BAND: f64 = 1e-12;
const RANK_TOL: f64 = 1e-9;

/// Tightest-inequality margin and the resulting classification.
pub fn membership(s: &BlochState, b: &CscoBasis) -> Result<Membership> {
    if s.dim != b.dim {
        return Err(Error::DimMismatch {
            left: s.dim,
            right: b.dim,
        });
    }
    let n = s.dim;
    let mut margin = 1.0;
    for i in 1..=n + 1 {
        let block = s.block(i);
        let worst = b
            .alphabet
            .tuples
            .iter()
            .map(|z| z.iter().zip(block).map(|(a, t)| a * t).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        margin += worst;
    }
    let location = if margin > BOUNDARY_BAND {
        Location::Inside
    } else if margin >= -BOUNDARY_BAND {
        Location::Boundary
    } else {
        Location::Outside
    };
    Ok(Membership { location, margin })
}

/// The n(n+1) claimed vertices: basis i, outcome k ↦ block i = z_k, rest 0.
/// Ordered basis-major, outcome-minor.
pub fn vertices(b: &CscoBasis) -> Vec<BlochState> {
    let n = b.dim;
    let w = n - 1;
    let mut out = Vec::with_capacity(n * (n + 1));
    for i in 0..n + 1 {
        for k in 0..n {
            let mut theta = vec![0.0; n * n - 1];
            theta[i * w..(i + 1) * w].copy_from_slice(&b.alphabet.tuples[k]);
            out.push(BlochState { dim: n, theta });
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexGeometry {
    pub dim: usize,
    pub norms: Vec<f64>,
    /// max |‖v‖ − √(n−1)|
    pub max_norm_dev: f64,
    /// max |cos(u,v) + 1/(n−1)| over same-basis pairs
    pub max_same_basis_cos_dev: f64,
    /// max |u·v| over cross-basis pairs
    pub max_cross_dot: f64,
}

/// Norms and pairwise angles of the vertex set.
pub fn vertex_geometry(b: &CscoBasis) -> VertexGeometry {
    let n = b.dim;
    let vs = vertices(b);
    let norms: Vec<f64> = vs.iter().map(|v| v.norm_sq().sqrt()).collect();
    let target = ((n - 1) as f64).sqrt();
    let max_norm_dev = norms
        .iter()
        .map(|v| (v - target).abs())
        .fold(0.0, f64::max);
    let mut max_same: f64 = 0.0;
    let mut max_cross: f64 = 0.0;
    for a in 0..vs.len() {
        for c in a + 1..vs.len() {
            let dot: f64 = vs[a]
                .theta
                .iter()
                .zip(&vs[c].theta)
                .map(|(x, y)| x * y)
                .sum();
            if a / n == c / n {
                let cos = dot / (norms[a] * norms[c]);
                max_same = max_same.max((cos + 1.0 / (n - 1) as f64).abs());
            } else {
                max_cross = max_cross.max(dot.abs());
            }
        }
    }
    VertexGeometry {
        dim: n,
        norms,
        max_norm_dev,
        max_same_basis_cos_dev: max_same,
        max_cross_dot: max_cross,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PolytopeReport {
    pub dim: usize,
    pub vertex_count: usize,
    pub facet_count: usize,
    pub edge_count_geometric: usize,
    /// geometric edges whose endpoints come from different bases — the
    /// basis-combinatorial counting rule.
    pub edge_count_crossbasis: usize,
    /// formula columns n(n+1), n^{n+1}, n³(n+1)/2 — computed, never measured
    pub formula_vertices: usize,
    pub formula_facets: usize,
    pub formula_edges: usize,
    pub max_vertex_norm_dev: f64,
    pub max_same_basis_cos_dev: f64,
    pub max_cross_basis_dot: f64,
    pub discrepancies: Vec<String>,
}

/// Facet normal for an outcome tuple: block i = z_{k_i}.
fn facet_normal(b: &CscoBasis, tuple: &[usize]) -> Vec<f64> {
    let n = b.dim;
    let w = n - 1;
    let mut g = vec![0.0; n * n - 1];
    for (i, &k) in tuple.iter().enumerate() {
        g[i * w..(i + 1) * w].copy_from_slice(&b.alphabet.tuples[k]);
    }
    g
}

/// Row rank of a dense real matrix by Gaussian elimination with partial
/// pivoting at the given tolerance.
pub fn real_rank(rows: &mut Vec<Vec<f64>>, tol: f64) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < m && col < n {
        let mut best = rank;
        for r in rank + 1..m {
            if rows[r][col].abs() > rows[best][col].abs() {
                best = r;
            }
        }
        if rows[best][col].abs() <= tol {
            col += 1;
            continue;
        }
        rows.swap(rank, best);
        let inv = 1.0 / rows[rank][col];
        for r in rank + 1..m {
            let f = rows[r][col] * inv;
            if f != 0.0 {
                for c in col..n {
                    rows[r][c] -= f * rows[rank][c];
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Brute-force vertex–facet incidence enumeration.
pub fn enumerate_faces(b: &CscoBasis) -> Result<PolytopeReport> {
    let n = b.dim;
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedDimension { dim: n });
    }
    let d = n * n - 1;
    let vs = vertices(b);
    let nv = vs.len();
    let sets = n + 1;
    let nf = n.pow(sets as u32);

    // tight-vertex bitset per inequality, and tight-facet bitset per vertex
    let words = nf.div_ceil(64);
    let mut vertex_facets = vec![vec![0u64; words]; nv];
    let mut facet_tight: Vec<Vec<usize>> = Vec::with_capacity(nf);
    let mut tuple = vec![0usize; sets];
    let mut facet_count = 0;
    for f in 0..nf {
        let mut rest = f;
        for slot in (0..sets).rev() {
            tuple[slot] = rest % n;
            rest /= n;
        }
        let g = facet_normal(b, &tuple);
        let mut tight = Vec::new();
        for (vi, v) in vs.iter().enumerate() {
            let val = 1.0 + g.iter().zip(&v.theta).map(|(a, t)| a * t).sum::<f64>();
            if val.abs() <= RANK_TOL {
                tight.push(vi);
                vertex_facets[vi][f / 64] |= 1 << (f % 64);
            }
        }
        // facet-defining iff the tight vertices affinely span dimension d−1
        if tight.len() >= d - 1 {
            let base = &vs[tight[0]].theta;
            let mut rows: Vec<Vec<f64>> = tight[1..]
                .iter()
                .map(|&vi| {
                    vs[vi]
                        .theta
                        .iter()
                        .zip(base)
                        .map(|(a, c)| a - c)
                        .collect()
                })
                .collect();
            if real_rank(&mut rows, RANK_TOL) == d - 1 {
                facet_count += 1;
            }
        }
        facet_tight.push(tight);
    }

    // edge criterion: common tight facets nonempty and shared by no third vertex
    let mut edge_geometric = 0;
    let mut edge_cross = 0;
    for u in 0..nv {
        for v in u + 1..nv {
            let common: Vec<u64> = (0..words)
                .map(|w| vertex_facets[u][w] & vertex_facets[v][w])
                .collect();
            if common.iter().all(|&w| w == 0) {
                continue;
            }
            let mut minimal = true;
            for w in 0..nv {
                if w == u || w == v {
                    continue;
                }
                if (0..words).all(|x| common[x] & !vertex_facets[w][x] == 0) {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                edge_geometric += 1;
                if u / n != v / n {
                    edge_cross += 1;
                }
            }
        }
    }

    let geom = vertex_geometry(b);
    let formula_vertices = n * (n + 1);
    let formula_facets = nf;
    let formula_edges = n * n * n * (n + 1) / 2;
    let mut discrepancies = Vec::new();
    if nv != formula_vertices {
        discrepancies.push(format!(
            "vertex count {nv} differs from formula {formula_vertices}"
        ));
    }
    if facet_count != formula_facets {
        discrepancies.push(format!(
            "facet count {facet_count} differs from formula {formula_facets}"
        ));
    }
    if edge_geometric != formula_edges {
        discrepancies.push(format!(
            "geometric edge count {edge_geometric} differs from the \
             cross-basis formula {formula_edges}: face-lattice analysis also \
             admits {} same-basis edges",
            edge_geometric - edge_cross
        ));
    }
    Ok(PolytopeReport {
        dim: n,
        vertex_count: nv,
        facet_count,
        edge_count_geometric: edge_geometric,
        edge_count_crossbasis: edge_cross,
        formula_vertices,
        formula_facets,
        formula_edges,
        max_vertex_norm_dev: geom.max_norm_dev,
        max_same_basis_cos_dev: geom.max_same_basis_cos_dev,
        max_cross_basis_dot: geom.max_cross_dot,
        discrepancies,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SupportProbe {
    pub dim: usize,
    pub directions: usize,
    /// max over directions of |LP optimum − vertex-set maximum|
    pub max_gap: f64,
}

/// LP support-function probe: the inequality region's support function must
/// equal that of the claimed vertex hull in every sampled direction.
pub fn support_probe(b: &CscoBasis, directions: usize, seed: u64) -> Result<SupportProbe> {
    let n = b.dim;
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedDimension { dim: n });
    }
    let d = n * n - 1;
    let sets = n + 1;
    let nf = n.pow(sets as u32);
    let shift = ((n - 1) as f64).sqrt(); // box |θ_j| ≤ √(n−1); y = θ + shift

    // constraint rows in the shifted variables y ≥ 0
    let mut constraints = Vec::with_capacity(nf + d);
    let mut tuple = vec![0usize; sets];
    for f in 0..nf {
        let mut rest = f;
        for slot in (0..sets).rev() {
            tuple[slot] = rest % n;
            rest /= n;
        }
        let g = facet_normal(b, &tuple);
        // 1 + g·θ ≥ 0 ⇒ −g·y ≤ 1 − shift·Σg
        let gsum: f64 = g.iter().sum();
        let row: Vec<f64> = g.iter().map(|x| -x).collect();
        constraints.push((row, 1.0 - shift * gsum));
    }
    for j in 0..d {
        let mut row = vec![0.0; d];
        row[j] = 1.0;
        constraints.push((row, 2.0 * shift));
    }

    let vs = vertices(b);
    let mut max_gap: f64 = 0.0;
    for dir in 0..directions {
        let mut rng = Rng::substream(seed, dir as u64);
        let mut c = vec![0.0; d];
        let mut norm = 0.0;
        for x in c.iter_mut() {
            *x = rng.gaussian();
            norm += *x * *x;
        }
        let norm = norm.sqrt().max(1e-12);
        for x in c.iter_mut() {
            *x /= norm;
        }
        let p = LpProblem {
            objective: c.clone(),
            constraints: constraints.clone(),
        };
        let sol = solve(&p, 1e-9)?;
        let lp_opt = sol.value - shift * c.iter().sum::<f64>();
        let vertex_opt = vs
            .iter()
            .map(|v| v.theta.iter().zip(&c).map(|(a, x)| a * x).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        max_gap = max_gap.max((lp_opt - vertex_opt).abs());
    }
    Ok(SupportProbe {
        dim: n,
        directions,
        max_gap,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OctahedronCheck {
    pub samples: usize,
    pub disagreements: usize,
    pub max_margin_mismatch: f64,
}

/// n = 2: membership must agree with the ℓ1 inequality |θ|_1 ≤ 1 pointwise.
pub fn octahedron_check(b: &CscoBasis, samples: usize, seed: u64) -> Result<OctahedronCheck> {
    if b.dim != 2 {
        return Err(Error::UnsupportedDimension { dim: b.dim });
    }
    let mut disagreements = 0;
    let mut max_mismatch: f64 = 0.0;
    for i in 0..samples {
        let mut rng = Rng::substream(seed, i as u64);
        let theta: Vec<f64> = (0..3).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
        let l1: f64 = theta.iter().map(|t| t.abs()).sum();
        let s = BlochState { dim: 2, theta };
        let m = membership(&s, b)?;
        max_mismatch = max_mismatch.max((m.margin - (1.0 - l1)).abs());
        let inside_l1 = 1.0 - l1 >= -BOUNDARY_BAND;
        let inside_m = m.margin >= -BOUNDARY_BAND;
        if inside_l1 != inside_m {
            disagreements += 1;
        }
    }
    Ok(OctahedronCheck {
        samples,
        disagreements,
        max_margin_mismatch: max_mismatch,
    })
}
