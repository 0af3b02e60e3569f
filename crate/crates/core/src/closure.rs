//! Partially coherent algebras: word-closure generation from {I, A, J},
//! the lockstep Gram decider for partial equivalence, adjacency-algebra
//! dimension, and the regularity fast paths.

use num::BigRational;

use crate::exact::{min_poly_exact, IMat, RrefBasis};
use crate::graphs::Graph;
use crate::spectral::{adjacency_cospectral, regularity_profile};

/// How a word was produced; indices refer to earlier accepted words, so a
/// recipe list replays identically on another graph of the same order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recipe {
    SeedI,
    SeedA,
    SeedJ,
    /// matrix product words[i] * words[j]
    Product(usize, usize),
    Transpose(usize),
    /// Schur product I • words[i] (diagonal extraction)
    SchurDiag(usize),
    /// Schur product A • words[i]
    SchurAdj(usize),
}

fn apply_recipe(recipe: Recipe, g: &Graph, words: &[IMat]) -> IMat {
    let n = g.n();
    match recipe {
        Recipe::SeedI => IMat::identity(n),
        Recipe::SeedA => g.adjacency(),
        Recipe::SeedJ => IMat::ones(n, n),
        Recipe::Product(i, j) => words[i].mul(&words[j]),
        Recipe::Transpose(i) => words[i].transpose(),
        Recipe::SchurDiag(i) => IMat::identity(n).schur(&words[i]),
        Recipe::SchurAdj(i) => g.adjacency().schur(&words[i]),
    }
}

fn vectorize(m: &IMat) -> Vec<BigRational> {
    m.vec_entries()
        .iter()
        .map(|x| BigRational::from(x.clone()))
        .collect()
}

/// A generated linear basis of the minimal algebra containing I, A, J that
/// is closed under products, transposes, and Schur products with I and A.
#[derive(Debug, Clone)]
pub struct WordBasis {
    pub recipes: Vec<Recipe>,
    pub words: Vec<IMat>,
    /// trace inner products tr(W_iᵀ W_j) of the accepted words
    pub gram: IMat,
    pub passes: usize,
    rref: RrefBasis,
}

impl WordBasis {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Exact membership of an integer matrix in the spanned algebra.
    pub fn contains(&self, m: &IMat) -> bool {
        self.rref.contains(&vectorize(m))
    }
}

/// Candidate recipes over a basis snapshot of size `d`, in the fixed
/// generation order (unary operations first, then products by row).
fn candidate_recipes(d: usize) -> Vec<Recipe> {
    let mut out = Vec::new();
    for i in 0..d {
        out.push(Recipe::Transpose(i));
        out.push(Recipe::SchurDiag(i));
        out.push(Recipe::SchurAdj(i));
    }
    for i in 0..d {
        for j in 0..d {
            out.push(Recipe::Product(i, j));
        }
    }
    out
}

/// Generates the minimal {I,A}-partially coherent algebra of `g` by
/// breadth-first closure with exact rational independence tests.
pub fn partially_coherent_closure(g: &Graph) -> WordBasis {
    let mut recipes = Vec::new();
    let mut words: Vec<IMat> = Vec::new();
    let mut rref = RrefBasis::new();
    let mut tried = std::collections::HashSet::new();

    let accept = |recipe: Recipe,
                      words: &mut Vec<IMat>,
                      recipes: &mut Vec<Recipe>,
                      rref: &mut RrefBasis| {
        let w = apply_recipe(recipe, g, words);
        if rref.insert(&vectorize(&w)) {
            words.push(w);
            recipes.push(recipe);
        }
    };

    for seed in [Recipe::SeedI, Recipe::SeedA, Recipe::SeedJ] {
        tried.insert(seed);
        accept(seed, &mut words, &mut recipes, &mut rref);
    }

    let mut passes = 0;
    loop {
        passes += 1;
        let before = words.len();
        for recipe in candidate_recipes(before) {
            if tried.insert(recipe) {
                accept(recipe, &mut words, &mut recipes, &mut rref);
            }
        }
        if words.len() == before {
            break;
        }
    }

    let d = words.len();
    let gram = IMat::from_fn(d, d, |i, j| words[i].transpose().mul(&words[j]).trace());
    WordBasis {
        recipes,
        words,
        gram,
        passes,
        rref,
    }
}

/// Decides partial equivalence of the algebras generated from (I, A_G, J)
/// and (I, A_H, J).
///
/// Both sides replay an identical recipe stream; the verdict holds iff at
/// every step each new word has the same trace inner products against all
/// previously accepted words (and itself) on both sides, the independence
/// decisions coincide, and closure is reached at the same dimension.
/// A partial equivalence is trace-preserving and fixes the generation
/// operations, so it forces these Gram equalities; conversely equal Grams
/// define a linear isometry word ↦ word that respects products, transposes,
/// and Schur products with I and A on a spanning set.
pub fn partial_equivalence(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() {
        return false;
    }
    let mut words_g: Vec<IMat> = Vec::new();
    let mut words_h: Vec<IMat> = Vec::new();
    let mut rref_g = RrefBasis::new();
    let mut rref_h = RrefBasis::new();
    let mut tried = std::collections::HashSet::new();

    // returns None on Gram or independence mismatch
    let step = |recipe: Recipe,
                    words_g: &mut Vec<IMat>,
                    words_h: &mut Vec<IMat>,
                    rref_g: &mut RrefBasis,
                    rref_h: &mut RrefBasis|
     -> Option<()> {
        let wg = apply_recipe(recipe, g, words_g);
        let wh = apply_recipe(recipe, h, words_h);
        let wgt = wg.transpose();
        let wht = wh.transpose();
        if wgt.mul(&wg).trace() != wht.mul(&wh).trace() {
            return None;
        }
        for k in 0..words_g.len() {
            if wgt.mul(&words_g[k]).trace() != wht.mul(&words_h[k]).trace() {
                return None;
            }
        }
        let ig = rref_g.insert(&vectorize(&wg));
        let ih = rref_h.insert(&vectorize(&wh));
        if ig != ih {
            return None;
        }
        if ig {
            words_g.push(wg);
            words_h.push(wh);
        }
        Some(())
    };

    for seed in [Recipe::SeedI, Recipe::SeedA, Recipe::SeedJ] {
        tried.insert(seed);
        if step(seed, &mut words_g, &mut words_h, &mut rref_g, &mut rref_h).is_none() {
            return false;
        }
    }
    loop {
        let before = words_g.len();
        for recipe in candidate_recipes(before) {
            if tried.insert(recipe)
                && step(recipe, &mut words_g, &mut words_h, &mut rref_g, &mut rref_h).is_none()
            {
                return false;
            }
        }
        if words_g.len() == before {
            return true;
        }
    }
}

/// Dimension of the adjacency algebra span{I, A, A², ...}: the degree of
/// the exact rational minimal polynomial of A.
pub fn adjacency_algebra_dim(g: &Graph) -> usize {
    min_poly_exact(&g.adjacency()).len() - 1
}

/// Fast path: a connected 1-walk-regular graph is S+-isomorphic to H iff
/// H is connected, 1-walk-regular, and adjacency-cospectral to it.
/// Returns `None` when the premise on `g` fails.
pub fn psd_iso_fastpath(g: &Graph, h: &Graph) -> Option<bool> {
    let pg = regularity_profile(g);
    if !(pg.connected && pg.one_walk_regular) {
        return None;
    }
    let ph = regularity_profile(h);
    Some(ph.connected && ph.one_walk_regular && adjacency_cospectral(g, h))
}

/// Fast path: a distance-regular graph is DNN-isomorphic to H iff H is
/// distance-regular and cospectral to it. Returns `None` when `g` is not
/// distance-regular.
pub fn dnn_iso_fastpath(g: &Graph, h: &Graph) -> Option<bool> {
    let pg = regularity_profile(g);
    if !pg.distance_regular {
        return None;
    }
    let ph = regularity_profile(h);
    Some(ph.distance_regular && adjacency_cospectral(g, h))
}
