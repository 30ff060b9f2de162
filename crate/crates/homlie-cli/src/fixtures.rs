//! Builtin example structures, one JSON document per instance.

pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub json: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "abelian_n2",
        summary: "rank-2 abelian structure over the rationals with metric, symplectic form and product structure",
        json: r#"{
  "format": 1,
  "name": "abelian_n2",
  "description": "Everything-zero rank-2 instance: all checks pass degenerately.",
  "ring": { "kind": "rational" },
  "bundle": {
    "rank": 2,
    "twist": [["1", "0"], ["0", "1"]],
    "twist_inverse": [["1", "0"], ["0", "1"]]
  },
  "bracket": { "kind": "lie" },
  "metric": [["0", "1"], ["1", "0"]],
  "symplectic": [["0", "1"], ["-1", "0"]],
  "product_structure": [["1", "0"], ["0", "-1"]]
}
"#,
    },
    Fixture {
        name: "rank2_affine",
        summary: "[e1,e2] = e2 over the rationals with hyperbolic metric, symplectic form and para-Kahler product structure",
        json: r#"{
  "format": 1,
  "name": "rank2_affine",
  "description": "The affine [e1,e2] = e2 family member with identity twist.",
  "ring": { "kind": "rational" },
  "bundle": {
    "rank": 2,
    "twist": [["1", "0"], ["0", "1"]],
    "twist_inverse": [["1", "0"], ["0", "1"]]
  },
  "bracket": {
    "kind": "lie",
    "entries": [ { "left": 1, "right": 2, "value": ["0", "1"] } ]
  },
  "metric": [["0", "1"], ["1", "0"]],
  "symplectic": [["0", "1"], ["-1", "0"]],
  "product_structure": [["1", "0"], ["0", "-1"]]
}
"#,
    },
    Fixture {
        name: "heisenberg_hom",
        summary: "rank-3 [e1,e2] = e3 with twist diag(1,-1,-1) and a compatible metric",
        json: r#"{
  "format": 1,
  "name": "heisenberg_hom",
  "description": "Nilpotent rank-3 structure with a sign-twisted bundle map.",
  "ring": { "kind": "rational" },
  "bundle": {
    "rank": 3,
    "twist": [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "-1"]],
    "twist_inverse": [["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "-1"]]
  },
  "bracket": {
    "kind": "lie",
    "entries": [ { "left": 1, "right": 2, "value": ["0", "0", "1"] } ]
  },
  "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]
}
"#,
    },
    Fixture {
        name: "poly_rank1_qscale",
        summary: "rank 1 over Q[x] with substitution x -> 2x and anchor subst∘(x d/dx)",
        json: r#"{
  "format": 1,
  "name": "poly_rank1_qscale",
  "description": "Scaling-substitution instance whose anchor commutes with the twist.",
  "ring": {
    "kind": "polynomial",
    "variables": ["x"],
    "substitution": ["2*x"],
    "substitution_inverse": ["1/2*x"]
  },
  "bundle": {
    "rank": 1,
    "twist": [["1"]],
    "twist_inverse": [["1"]]
  },
  "bracket": { "kind": "lie" },
  "anchor": [ ["x"] ],
  "metric": [["1"]]
}
"#,
    },
    Fixture {
        name: "double_zero_poisson",
        summary: "rank-2 double over Q[x] with pairing metric, product structure, declared split and symplectic form",
        json: r#"{
  "format": 1,
  "name": "double_zero_poisson",
  "description": "Primal generator with anchor subst∘(x d/dx) paired with a dual generator; zero basis brackets.",
  "ring": {
    "kind": "polynomial",
    "variables": ["x"],
    "substitution": ["2*x"],
    "substitution_inverse": ["1/2*x"]
  },
  "bundle": {
    "rank": 2,
    "twist": [["1", "0"], ["0", "1"]],
    "twist_inverse": [["1", "0"], ["0", "1"]]
  },
  "bracket": { "kind": "lie" },
  "anchor": [ ["x"], ["0"] ],
  "metric": [["0", "1"], ["1", "0"]],
  "symplectic": [["0", "1"], ["-1", "0"]],
  "product_structure": [["1", "0"], ["0", "-1"]],
  "split": {
    "plus": [ ["1", "0"] ],
    "minus": [ ["0", "1"] ]
  }
}
"#,
    },
    Fixture {
        name: "foliation_block",
        summary: "two affine blocks with different diagonal twists and a block product structure",
        json: r#"{
  "format": 1,
  "name": "foliation_block",
  "description": "Direct sum of two twisted affine blocks; the product structure is the twist inverse on one block and its negative on the other.",
  "ring": { "kind": "rational" },
  "bundle": {
    "rank": 4,
    "twist": [
      ["1", "0", "0", "0"],
      ["0", "3", "0", "0"],
      ["0", "0", "1", "0"],
      ["0", "0", "0", "5"]
    ],
    "twist_inverse": [
      ["1", "0", "0", "0"],
      ["0", "1/3", "0", "0"],
      ["0", "0", "1", "0"],
      ["0", "0", "0", "1/5"]
    ]
  },
  "bracket": {
    "kind": "lie",
    "entries": [
      { "left": 1, "right": 2, "value": ["0", "1", "0", "0"] },
      { "left": 3, "right": 4, "value": ["0", "0", "0", "1"] }
    ]
  },
  "product_structure": [
    ["1", "0", "0", "0"],
    ["0", "1/3", "0", "0"],
    ["0", "0", "-1", "0"],
    ["0", "0", "0", "-1/5"]
  ]
}
"#,
    },
    Fixture {
        name: "double_mutant_shear",
        summary: "documented mutant: para-Hermitian rank-4 double whose connection shears across the split",
        json: r#"{
  "format": 1,
  "name": "double_mutant_shear",
  "description": "Nonabelian primal block with zero dual and mixed brackets: passes the para-Hermitian layer, fails connection-preserves-split.",
  "ring": { "kind": "rational" },
  "bundle": {
    "rank": 4,
    "twist": [
      ["1", "0", "0", "0"],
      ["0", "1", "0", "0"],
      ["0", "0", "1", "0"],
      ["0", "0", "0", "1"]
    ],
    "twist_inverse": [
      ["1", "0", "0", "0"],
      ["0", "1", "0", "0"],
      ["0", "0", "1", "0"],
      ["0", "0", "0", "1"]
    ]
  },
  "bracket": {
    "kind": "lie",
    "entries": [ { "left": 1, "right": 2, "value": ["0", "1", "0", "0"] } ]
  },
  "metric": [
    ["0", "0", "1", "0"],
    ["0", "0", "0", "1"],
    ["1", "0", "0", "0"],
    ["0", "1", "0", "0"]
  ],
  "product_structure": [
    ["1", "0", "0", "0"],
    ["0", "1", "0", "0"],
    ["0", "0", "-1", "0"],
    ["0", "0", "0", "-1"]
  ]
}
"#,
    },
];

/// The six instances that pass every check the theory asserts for them.
pub const PASSING_FIXTURES: &[&str] = &[
    "abelian_n2",
    "rank2_affine",
    "heisenberg_hom",
    "poly_rank1_qscale",
    "double_zero_poisson",
    "foliation_block",
];

pub fn by_name(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
