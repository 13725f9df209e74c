//! The JSON formats read and written by the commands, printed by `--schema`.

use serde_json::{json, Value};

pub fn schema() -> Value {
    let scalar = json!({
        "description": "exact complex rational",
        "oneOf": [
            { "type": "object", "properties": { "re": { "type": "string" }, "im": { "type": "string" } }, "example": { "re": "1/2", "im": "-3/1" } },
            { "type": "string", "example": "5/3" },
            { "type": "integer" }
        ]
    });
    let matrix = json!({ "description": "k x k matrix as a list of rows of scalars", "type": "array" });
    let sequence = |what: &str| json!({ "description": format!("{what}, entry n-1 holds degree n"), "type": "array" });
    json!({
        "scalar": scalar,
        "matrix": matrix,
        "distribution": {
            "description": "exactly one of the pairs phi/Phi, kappa/ckappa, t/ct",
            "properties": {
                "order": { "type": "integer" },
                "dim": { "type": "integer" },
                "phi": sequence("scalar moments phi(X^n)"),
                "Phi": sequence("matrix moments Phi(X^n)"),
                "kappa": sequence("free cumulants"),
                "ckappa": sequence("c-free cumulants (matrices)"),
                "t": { "description": "t-coefficients t_0..t_{N-1}", "type": "array" },
                "ct": { "description": "ct-coefficients (matrices) ct_0..ct_{N-1}", "type": "array" }
            }
        },
        "pair": {
            "description": "input of `multiply` and `divisibility haar`",
            "properties": {
                "X": { "properties": { "kappa": sequence("free cumulants"), "ckappa": sequence("c-free cumulants") } },
                "Y": { "properties": { "kappa": sequence("free cumulants"), "ckappa": sequence("c-free cumulants") } },
                "order": { "type": "integer" }
            }
        },
        "unitary": {
            "description": "input of `divisibility psd`; A_0 = I and A_{-n} = A_n^* are implied",
            "properties": {
                "A": sequence("matrix moments A_n = Phi(u^n)"),
                "a": sequence("scalar moments a_n = phi(u^n), |a_n| <= 1")
            }
        },
        "counterexample": {
            "description": "input of `divisibility counterexample`, or pass --lambda re,im",
            "properties": { "lambda": { "description": "[re, im]" } }
        },
        "levy": {
            "description": "input of `divisibility levy`",
            "properties": {
                "family": { "description": "map from a point x to {\"gamma\": [re, im] with modulus 1, \"sigma\": [[theta, weight], ...]}" },
                "z": { "description": "list of [re, im] with modulus below 1" }
            }
        },
        "enumerate": {
            "nc": { "n": "integer", "blocks": "list of sorted blocks in canonical order" },
            "ncl": { "n": "integer", "blocks": "list of sorted blocks in canonical order" },
            "trees": { "children": "list of subtrees" },
            "bicolor": { "children": "list of subtrees", "colors": "colour of each child, 1s before 0s" },
            "trailer": { "count": "number of records" }
        },
        "verify": {
            "properties": {
                "suite": "lemma22 | prop23 | prop24 | prop25 | theorem31 | trees",
                "order": "integer",
                "dim": "integer",
                "trials": "integer",
                "seed": "integer; trial i uses seed + i",
                "checked_up_to": "highest degree, word length or tree size compared",
                "failures": "list of {trial, seed, check, at}"
            }
        },
        "exit_codes": { "0": "success", "1": "identity or check failed", "2": "size limit exceeded", "3": "input outside the domain" }
    })
}
