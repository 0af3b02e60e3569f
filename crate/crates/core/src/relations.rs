//! Top-level relation decider: dispatches each isomorphism relaxation to
//! its exact decision procedure, preferring regularity fast paths and
//! cross-checking them against the general routes on small inputs.

use serde::Serialize;
use serde_json::{json, Value};

use crate::closure::{dnn_iso_fastpath, partial_equivalence, partially_coherent_closure, psd_iso_fastpath};
use crate::exact::rational_to_f64;
use crate::graphs::{exact_isomorphism, Graph};
use crate::spectral::fractional_isomorphic;
use crate::wl::wl_equivalent;

/// The decidable relaxations, ordered from strongest to weakest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Exact,
    Dnn,
    Psd,
    Fractional,
}

impl Relation {
    pub fn all() -> [Relation; 4] {
        [
            Relation::Exact,
            Relation::Dnn,
            Relation::Psd,
            Relation::Fractional,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Relation::Exact => "exact",
            Relation::Dnn => "dnn",
            Relation::Psd => "psd",
            Relation::Fractional => "fractional",
        }
    }
}

impl std::str::FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Relation::Exact),
            "dnn" => Ok(Relation::Dnn),
            "psd" => Ok(Relation::Psd),
            "fractional" => Ok(Relation::Fractional),
            other => Err(format!("unknown relation '{}'", other)),
        }
    }
}

/// Decision outcome with the witness produced by whichever route ran.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub relation: String,
    pub holds: bool,
    pub certificate: Value,
    pub dims: Value,
}

impl Verdict {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).unwrap()
    }
}

/// Input size below which fast-path answers are re-derived by the general
/// procedure and compared.
const CROSS_CHECK_LIMIT: usize = 16;

pub fn decide_relation(g: &Graph, h: &Graph, relation: Relation) -> Verdict {
    let dims_base = json!({"n_g": g.n(), "n_h": h.n()});
    match relation {
        Relation::Exact => {
            let iso = exact_isomorphism(g, h);
            Verdict {
                relation: "exact".into(),
                holds: iso.is_some(),
                certificate: match iso {
                    Some(f) => json!({"kind": "isomorphism", "map": f}),
                    None => json!({"kind": "exhausted_search"}),
                },
                dims: dims_base,
            }
        }
        Relation::Dnn => {
            let fast = dnn_iso_fastpath(g, h);
            let small = g.n() <= CROSS_CHECK_LIMIT && h.n() <= CROSS_CHECK_LIMIT;
            let (holds, certificate, wl_dims) = if let (Some(v), false) = (fast, small) {
                (
                    v,
                    json!({"kind": "distance_regular_cospectral_fastpath", "holds": v}),
                    Value::Null,
                )
            } else {
                let eq = wl_equivalent(g, h);
                if let Some(v) = fast {
                    assert_eq!(
                        v,
                        eq.is_some(),
                        "distance-regular fast path disagrees with WL equivalence"
                    );
                }
                match eq {
                    Some(eq) => {
                        let d = eq.basis_g.dim();
                        (
                            true,
                            json!({"kind": "coherent_algebra_equivalence",
                                   "class_pairing": eq.pairing,
                                   "classes": d}),
                            json!(d),
                        )
                    }
                    None => (
                        false,
                        json!({"kind": "wl_refutation"}),
                        Value::Null,
                    ),
                }
            };
            let mut dims = dims_base;
            if !wl_dims.is_null() {
                dims["coherent_dim"] = wl_dims;
            }
            Verdict {
                relation: "dnn".into(),
                holds,
                certificate,
                dims,
            }
        }
        Relation::Psd => {
            let fast = psd_iso_fastpath(g, h);
            let small = g.n() <= CROSS_CHECK_LIMIT && h.n() <= CROSS_CHECK_LIMIT;
            let (holds, certificate) = if let (Some(v), false) = (fast, small) {
                (
                    v,
                    json!({"kind": "one_walk_regular_cospectral_fastpath", "holds": v}),
                )
            } else {
                let general = partial_equivalence(g, h);
                if let Some(v) = fast {
                    assert_eq!(
                        v, general,
                        "1-walk-regular fast path disagrees with lockstep Gram decision"
                    );
                }
                if general {
                    (true, json!({"kind": "gram_lockstep_equivalence"}))
                } else {
                    (false, json!({"kind": "gram_lockstep_refutation"}))
                }
            };
            let mut dims = dims_base;
            if g.n() <= CROSS_CHECK_LIMIT {
                dims["partially_coherent_dim_g"] = json!(partially_coherent_closure(g).dim());
            }
            Verdict {
                relation: "psd".into(),
                holds,
                certificate,
                dims,
            }
        }
        Relation::Fractional => {
            let witness = fractional_isomorphic(g, h);
            Verdict {
                relation: "fractional".into(),
                holds: witness.is_some(),
                certificate: match witness {
                    Some(d) => {
                        let rows: Vec<Vec<f64>> = (0..d.rows)
                            .map(|i| (0..d.cols).map(|j| rational_to_f64(&d[(i, j)])).collect())
                            .collect();
                        json!({"kind": "doubly_stochastic_witness", "matrix": rows})
                    }
                    None => json!({"kind": "degree_refinement_refutation"}),
                },
                dims: dims_base,
            }
        }
    }
}

/// Holds-flags for all four relations, strongest first.
pub fn decide_all(g: &Graph, h: &Graph) -> [bool; 4] {
    let mut out = [false; 4];
    for (i, r) in Relation::all().into_iter().enumerate() {
        out[i] = decide_relation(g, h, r).holds;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, hoffman, hypercube4, rook4, shrikhande, Graph};

    #[test]
    fn separation_psd_not_dnn() {
        let q4 = hypercube4();
        let hof = hoffman();
        assert!(decide_relation(&q4, &hof, Relation::Psd).holds);
        assert!(!decide_relation(&q4, &hof, Relation::Dnn).holds);
        assert!(!decide_relation(&q4, &hof, Relation::Exact).holds);
        assert!(decide_relation(&q4, &hof, Relation::Fractional).holds);
    }

    #[test]
    fn separation_dnn_not_exact() {
        let r = rook4();
        let s = shrikhande();
        assert!(decide_relation(&r, &s, Relation::Dnn).holds);
        assert!(!decide_relation(&r, &s, Relation::Exact).holds);
        assert!(decide_relation(&r, &s, Relation::Psd).holds);
    }

    #[test]
    fn separation_fractional_not_psd() {
        let c6 = cycle(6);
        let t2 = cycle(3).disjoint_union(&cycle(3));
        assert!(decide_relation(&c6, &t2, Relation::Fractional).holds);
        assert!(!decide_relation(&c6, &t2, Relation::Psd).holds);
    }

    #[test]
    fn reflexive_all_relations() {
        let g = cycle(7);
        for r in Relation::all() {
            assert!(decide_relation(&g, &g, r).holds, "{:?}", r);
        }
    }

    #[test]
    fn chain_monotone_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..20 {
            let n = rng.gen_range(1..=6);
            let mut g = Graph::empty(n);
            let mut h = Graph::empty(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                    if rng.gen_bool(0.5) {
                        h.add_edge(u, v).unwrap();
                    }
                }
            }
            let [e, d, p, f] = decide_all(&g, &h);
            assert!(!e || d);
            assert!(!d || p);
            assert!(!p || f);
        }
    }

    #[test]
    fn verdict_json_schema() {
        let v = decide_relation(&cycle(4), &cycle(4), Relation::Dnn).to_json();
        assert_eq!(v["relation"], "dnn");
        assert_eq!(v["holds"], true);
        assert!(v["certificate"]["kind"].is_string());
        assert!(v["dims"]["n_g"].is_number());
    }

    #[test]
    fn relation_parsing() {
        assert_eq!("psd".parse::<Relation>().unwrap(), Relation::Psd);
        assert!("bogus".parse::<Relation>().is_err());
    }
}
