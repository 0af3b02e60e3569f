//! 2-dimensional Weisfeiler–Leman pair refinement, coherent algebra bases
//! with exact intersection numbers, and the WL-equivalence decider.

use std::collections::BTreeMap;

use num::{BigInt, Zero};

use crate::exact::IMat;
use crate::graphs::{Graph, RelKind};

/// Stable coloring of ordered vertex pairs. When built over two graphs the
/// palette is shared, so equal color ids mean indistinguishable pairs.
#[derive(Debug, Clone)]
pub struct PairColoring {
    /// colors of G's pairs, row-major (g1 * n + g2)
    pub colors_g: Vec<usize>,
    /// colors of H's pairs (empty when stabilizing a single graph)
    pub colors_h: Vec<usize>,
    pub n_g: usize,
    pub n_h: usize,
    pub num_colors: usize,
    pub rounds: usize,
}

impl PairColoring {
    pub fn color_g(&self, g1: usize, g2: usize) -> usize {
        self.colors_g[g1 * self.n_g + g2]
    }

    pub fn color_h(&self, h1: usize, h2: usize) -> usize {
        self.colors_h[h1 * self.n_h + h2]
    }
}

fn initial_key(rel: RelKind) -> usize {
    match rel {
        RelKind::Equal => 0,
        RelKind::Adjacent => 1,
        RelKind::DistinctNonAdjacent => 2,
    }
}

/// One shared-palette refinement to the 2-WL fixpoint over one or two
/// graphs. Color ids are canonical: assigned by first occurrence scanning
/// G's pairs row-major, then H's.
fn stabilize_pairs(g: &Graph, h: Option<&Graph>) -> PairColoring {
    let ng = g.n();
    let nh = h.map_or(0, |h| h.n());

    let assign =
        |keys_g: &[Vec<usize>], keys_h: &[Vec<usize>]| -> (Vec<usize>, Vec<usize>, usize) {
            let mut palette: BTreeMap<&[usize], usize> = BTreeMap::new();
            let mut out_g = Vec::with_capacity(keys_g.len());
            let mut out_h = Vec::with_capacity(keys_h.len());
            for key in keys_g {
                let fresh = palette.len();
                out_g.push(*palette.entry(key).or_insert(fresh));
            }
            for key in keys_h {
                let fresh = palette.len();
                out_h.push(*palette.entry(key).or_insert(fresh));
            }
            (out_g, out_h, palette.len())
        };

    let init = |graph: &Graph| -> Vec<Vec<usize>> {
        let n = graph.n();
        let mut keys = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                keys.push(vec![initial_key(graph.rel(u, v).unwrap())]);
            }
        }
        keys
    };

    let (mut cg, mut ch, mut num_colors) = assign(
        &init(g),
        &h.map(|h| init(h)).unwrap_or_default(),
    );

    let mut rounds = 0;
    loop {
        let refine_keys = |n: usize, colors: &[usize]| -> Vec<Vec<usize>> {
            let mut keys = Vec::with_capacity(n * n);
            for u in 0..n {
                for v in 0..n {
                    // multiset over w of (color(u,w), color(w,v)), flattened
                    let mut multiset: Vec<(usize, usize)> =
                        (0..n).map(|w| (colors[u * n + w], colors[w * n + v])).collect();
                    multiset.sort_unstable();
                    let mut key = Vec::with_capacity(1 + 2 * n);
                    key.push(colors[u * n + v]);
                    for (a, b) in multiset {
                        key.push(a);
                        key.push(b);
                    }
                    keys.push(key);
                }
            }
            keys
        };
        let kg = refine_keys(ng, &cg);
        let kh = if nh > 0 {
            refine_keys(nh, &ch)
        } else {
            Vec::new()
        };
        let (new_g, new_h, new_count) = assign(&kg, &kh);
        rounds += 1;
        // old color is part of the key, so colors only split; a stable
        // count means a stable partition
        if new_count == num_colors {
            return PairColoring {
                colors_g: cg,
                colors_h: ch,
                n_g: ng,
                n_h: nh,
                num_colors,
                rounds,
            };
        }
        cg = new_g;
        ch = new_h;
        num_colors = new_count;
    }
}

/// The 01 basis of a coherent algebra together with its exact structure
/// constants, validated on construction.
#[derive(Debug, Clone)]
pub struct CoherentBasis {
    /// ordered 01 class matrices A_1..A_d
    pub mats: Vec<IMat>,
    /// indices of diagonal classes (those summing to I)
    pub diagonal_classes: Vec<usize>,
    /// transpose pairing: mats[i].transpose() == mats[pairing[i]]
    pub transpose_pairing: Vec<usize>,
    /// intersection numbers p[i][j][k] with A_i A_j = sum_k p[i][j][k] A_k
    pub intersection_numbers: Vec<Vec<Vec<BigInt>>>,
    /// number of ones in each class matrix
    pub class_sizes: Vec<BigInt>,
    /// classes whose union is the adjacency matrix
    pub adjacency_classes: Vec<usize>,
}

impl CoherentBasis {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    /// Builds the basis from a stable pair coloring of a single graph,
    /// verifying the defining properties exactly.
    fn from_coloring(g: &Graph, colors: &[usize], num_colors: usize) -> Self {
        let n = g.n();
        assert_eq!(colors.len(), n * n);
        let mut mats = vec![IMat::zeros(n, n); num_colors];
        for u in 0..n {
            for v in 0..n {
                mats[colors[u * n + v]][(u, v)] = BigInt::from(1);
            }
        }

        // (ii) sum = J and (i) Schur-orthogonality hold since classes
        // partition the pair set; recheck anyway
        let mut total = IMat::zeros(n, n);
        for m in &mats {
            total = total.add(m);
        }
        assert_eq!(total, IMat::ones(n, n), "classes do not partition J");

        // (iii) diagonal classes sum to I
        let mut diagonal_classes = Vec::new();
        for (i, m) in mats.iter().enumerate() {
            let has_diag = (0..n).any(|v| !m[(v, v)].is_zero());
            let has_off = (0..n).any(|u| (0..n).any(|v| u != v && !m[(u, v)].is_zero()));
            assert!(
                !(has_diag && has_off),
                "class {} mixes diagonal and off-diagonal pairs",
                i
            );
            if has_diag {
                diagonal_classes.push(i);
            }
        }
        let mut diag_sum = IMat::zeros(n, n);
        for &i in &diagonal_classes {
            diag_sum = diag_sum.add(&mats[i]);
        }
        assert_eq!(diag_sum, IMat::identity(n), "diagonal classes do not sum to I");

        // (iv) closure under transpose
        let transpose_pairing: Vec<usize> = mats
            .iter()
            .map(|m| {
                let t = m.transpose();
                mats.iter()
                    .position(|other| *other == t)
                    .expect("class set not closed under transpose")
            })
            .collect();

        // (v) A_i A_j decomposes with constant coefficients per class
        let d = mats.len();
        let mut reps = vec![(0usize, 0usize); d];
        for u in 0..n {
            for v in 0..n {
                reps[colors[u * n + v]] = (u, v);
            }
        }
        let mut intersection_numbers = vec![vec![vec![BigInt::zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod = mats[i].mul(&mats[j]);
                for k in 0..d {
                    let (u, v) = reps[k];
                    intersection_numbers[i][j][k] = prod[(u, v)].clone();
                }
                for u in 0..n {
                    for v in 0..n {
                        let k = colors[u * n + v];
                        assert_eq!(
                            prod[(u, v)],
                            intersection_numbers[i][j][k],
                            "product A_{} A_{} not constant on class {}",
                            i,
                            j,
                            k
                        );
                    }
                }
            }
        }

        let class_sizes: Vec<BigInt> = mats
            .iter()
            .map(|m| m.inner(&IMat::ones(n, n)))
            .collect();

        let a = g.adjacency();
        let adjacency_classes: Vec<usize> = (0..d)
            .filter(|&i| {
                let (u, v) = reps[i];
                !a[(u, v)].is_zero()
            })
            .collect();
        // initial coloring respects rel, so each class is entirely inside
        // or outside the edge set
        let mut adj_sum = IMat::zeros(n, n);
        for &i in &adjacency_classes {
            adj_sum = adj_sum.add(&mats[i]);
        }
        assert_eq!(adj_sum, a, "adjacency classes do not sum to A");

        CoherentBasis {
            mats,
            diagonal_classes,
            transpose_pairing,
            intersection_numbers,
            class_sizes,
            adjacency_classes,
        }
    }
}

/// Runs 2-WL on a single graph to its fixpoint and extracts the coherent
/// algebra's 01 basis.
pub fn wl2_stabilize(g: &Graph) -> (PairColoring, CoherentBasis) {
    let coloring = stabilize_pairs(g, None);
    let basis = CoherentBasis::from_coloring(g, &coloring.colors_g, coloring.num_colors);
    (coloring, basis)
}

/// Certificate for a successful WL-equivalence run: a bijection between
/// the two coherent bases with equal intersection numbers and the I/A
/// classes matched.
#[derive(Debug, Clone)]
pub struct WlEquivalence {
    pub coloring: PairColoring,
    pub basis_g: CoherentBasis,
    pub basis_h: CoherentBasis,
    /// class pairing f with basis_g class i corresponding to basis_h
    /// class f[i]; identity under the shared palette
    pub pairing: Vec<usize>,
}

/// Decides whether 2-WL distinguishes the graphs; equivalently whether
/// their coherent algebras admit an equivalence mapping A_G to A_H.
pub fn wl_equivalent(g: &Graph, h: &Graph) -> Option<WlEquivalence> {
    if g.n() != h.n() {
        return None;
    }
    let coloring = stabilize_pairs(g, Some(h));
    let k = coloring.num_colors;
    let mut count_g = vec![0usize; k];
    let mut count_h = vec![0usize; k];
    for &c in &coloring.colors_g {
        count_g[c] += 1;
    }
    for &c in &coloring.colors_h {
        count_h[c] += 1;
    }
    if count_g != count_h {
        return None;
    }
    // every shared color must occur on both sides (implied by the counts)
    // and the palette already separates rel kinds, so the classes carrying
    // I and A_G pair with those carrying I and A_H. Build both bases over
    // the shared palette and certify equal structure constants.
    let basis_g = CoherentBasis::from_coloring(g, &coloring.colors_g, k);
    let basis_h = CoherentBasis::from_coloring(h, &coloring.colors_h, k);
    if basis_g.diagonal_classes != basis_h.diagonal_classes
        || basis_g.adjacency_classes != basis_h.adjacency_classes
        || basis_g.transpose_pairing != basis_h.transpose_pairing
        || basis_g.intersection_numbers != basis_h.intersection_numbers
        || basis_g.class_sizes != basis_h.class_sizes
    {
        return None;
    }
    let pairing = (0..k).collect();
    Some(WlEquivalence {
        coloring,
        basis_g,
        basis_h,
        pairing,
    })
}
