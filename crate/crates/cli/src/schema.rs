//! JSON schemas for input files and emitted reports.

use eqfix_core::io::SCHEMA_VERSION;
use serde_json::{json, Value};

const DIALECT: &str = "https://json-schema.org/draft/2020-12/schema";

fn uint() -> Value {
    json!({ "type": "integer", "minimum": 0 })
}

fn int() -> Value {
    json!({ "type": "integer" })
}

fn array(items: Value) -> Value {
    json!({ "type": "array", "items": items })
}

fn object(required: &[&str], properties: Value) -> Value {
    json!({ "type": "object", "required": required, "properties": properties, "additionalProperties": false })
}

fn rational() -> Value {
    json!({ "type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$" })
}

fn modulus() -> Value {
    json!({ "oneOf": [uint(), { "const": "unknown" }] })
}

fn check_state() -> Value {
    json!({ "enum": ["pass", "fail", "indeterminate"] })
}

fn nullable(v: Value) -> Value {
    json!({ "oneOf": [v, { "type": "null" }] })
}

/// Adds the envelope fields every report carries.
fn report(command: &str, required: &[&str], properties: Value) -> Value {
    let mut props = properties;
    props["schema_version"] = json!({ "const": SCHEMA_VERSION });
    props["command"] = json!({ "const": command });
    let mut req: Vec<&str> = vec!["schema_version", "command"];
    req.extend_from_slice(required);
    let mut s = object(&req, props);
    s["$schema"] = json!(DIALECT);
    s
}

pub fn group_input() -> Value {
    json!({
        "$schema": DIALECT,
        "oneOf": [
            object(&["kind", "mul"], json!({ "kind": { "const": "table" }, "mul": array(array(uint())) })),
            object(&["kind", "degree", "generators"], json!({
                "kind": { "const": "perm" }, "degree": uint(), "generators": array(array(uint()))
            })),
            object(&["kind", "name"], json!({ "kind": { "const": "named" }, "name": { "type": "string" } })),
        ]
    })
}

fn pair(a: Value, b: Value) -> Value {
    json!({ "type": "array", "prefixItems": [a, b], "items": false, "minItems": 2 })
}

/// Strips the dialect marker so a schema can be nested.
fn bare(mut v: Value) -> Value {
    v.as_object_mut().expect("object").remove("$schema");
    v
}

pub fn complex_input() -> Value {
    let g = bare(group_input());
    json!({
        "$schema": DIALECT,
        "type": "object",
        "required": ["cells"],
        "additionalProperties": false,
        "properties": {
            "cells": array(object(&["id", "dim"], json!({ "id": uint(), "dim": uint() }))),
            "boundary": { "type": "object", "additionalProperties": array(pair(uint(), int())) },
            "group": g,
            "action": {
                "type": "object",
                "additionalProperties": array({
                    json!({ "type": "array", "prefixItems": [uint(), uint(), { "enum": [1, -1] }], "items": false, "minItems": 3 })
                })
            },
            "free_kernel": array(uint()),
        }
    })
}

pub fn extension_input() -> Value {
    let g = bare(group_input());
    json!({
        "$schema": DIALECT,
        "type": "object",
        "required": ["gamma", "pi"],
        "additionalProperties": false,
        "properties": {
            "gamma": g.clone(),
            "pi": array(uint()),
            "onto_g": object(&["g", "map"], json!({ "g": g, "map": array(uint()) })),
        }
    })
}

pub fn profile_input() -> Value {
    let c = bare(complex_input());
    json!({
        "$schema": DIALECT,
        "type": "object",
        "required": ["complex", "values"],
        "additionalProperties": false,
        "properties": { "complex": c, "values": { "type": "object", "additionalProperties": int() } }
    })
}

pub fn deficits_input() -> Value {
    json!({
        "$schema": DIALECT,
        "oneOf": [
            array(int()),
            object(&["entries"], json!({ "components": nullable(array(uint())), "entries": array(int()) })),
        ]
    })
}

fn cone_move() -> Value {
    object(
        &["kind", "sigma", "a", "b", "c", "anchor", "kappa", "path", "fold", "deltas"],
        json!({
            "kind": { "enum": ["Standard", "Dangling", "BaseEdge", "BaseBounce"] },
            "sigma": uint(), "a": int(), "b": int(), "c": int(), "anchor": uint(),
            "kappa": nullable(uint()), "path": array(uint()), "fold": nullable(uint()),
            "deltas": { "type": "object", "additionalProperties": int() },
        }),
    )
}

fn smith_report_props() -> Value {
    json!({
        "entries": array(object(&["subgroup", "p", "betti_x", "betti_y", "pass"], json!({
            "subgroup": array(uint()), "p": uint(), "betti_x": array(uint()), "betti_y": array(uint()),
            "pass": { "type": "boolean" },
        }))),
        "pass": { "type": "boolean" },
    })
}

fn cyclic_report() -> Value {
    object(
        &["gamma", "members", "sum_fixed_x", "sum_fixed_y", "pass", "coefficient", "expected_coefficient", "coefficient_matches"],
        cyclic_props(),
    )
}

fn cyclic_props() -> Value {
    json!({
        "gamma": uint(), "members": array(uint()), "sum_fixed_x": int(), "sum_fixed_y": int(),
        "pass": { "type": "boolean" }, "coefficient": rational(), "expected_coefficient": rational(),
        "coefficient_matches": { "type": "boolean" },
    })
}

fn compwise_props() -> Value {
    json!({
        "groups": array(object(
            &["d_component", "d_label", "class_id", "components", "sum_fixed_x", "sum_fixed_y", "pass"],
            json!({
                "d_component": uint(), "d_label": uint(), "class_id": uint(), "components": array(uint()),
                "sum_fixed_x": int(), "sum_fixed_y": int(), "pass": { "type": "boolean" },
            }),
        )),
        "pass": { "type": "boolean" },
    })
}

fn conclusion() -> Value {
    json!({
        "oneOf": [
            object(&["kind"], json!({ "kind": { "const": "SufficientPass" } })),
            object(&["kind", "reason"], json!({ "kind": { "const": "NecessaryFail" }, "reason": { "enum": ["Global", "Trace", "Smith"] } })),
            object(&["kind", "pass"], json!({ "kind": { "const": "DefinitiveExact" }, "pass": { "type": "boolean" } })),
            object(&["kind", "reason"], json!({ "kind": { "const": "Indeterminate" }, "reason": { "type": "string" } })),
        ]
    })
}

pub fn reports() -> Value {
    let degree = object(&["degree", "betti", "torsion"], json!({ "degree": uint(), "betti": uint(), "torsion": array(json!({ "type": "string" })) }));
    let trace_reports = object(
        &["cyclic", "compwise", "pass"],
        json!({
            "cyclic": array(cyclic_report()),
            "compwise": nullable(object(&["groups", "pass"], compwise_props())),
            "pass": { "type": "boolean" },
        }),
    );
    json!({
        "classify": report("classify", &["order", "tag", "witness", "m_G", "n_G"], json!({
            "order": uint(),
            "tag": { "enum": ["Zero", "One", "NontrivialUnknown"] },
            "witness": nullable(json!({
                "type": "object",
                "required": ["p_subgroup"],
                "additionalProperties": false,
                "properties": { "p_subgroup": array(uint()), "h_subgroup": array(uint()) }
            })),
            "m_G": modulus(),
            "n_G": modulus(),
        })),
        "degree-zero": report("degree-zero", &["order", "indices", "coefficients", "check"], json!({
            "order": uint(),
            "indices": array(object(&["p", "index"], json!({ "p": uint(), "index": uint() }))),
            "coefficients": array(int()),
            "check": { "const": 0 },
        })),
        "complex fixed": report("complex fixed", &["subgroup", "cells", "euler_characteristic", "components", "delta"], json!({
            "subgroup": array(uint()),
            "cells": array(uint()),
            "euler_characteristic": int(),
            "components": array(object(&["cells", "euler_characteristic"], json!({ "cells": array(uint()), "euler_characteristic": int() }))),
            "delta": int(),
        })),
        "complex homology": report("complex homology", &["degrees", "euler_characteristic"], json!({
            "degrees": array(degree),
            "euler_characteristic": int(),
            "mod_p": object(&["p", "betti"], json!({ "p": uint(), "betti": array(uint()) })),
        })),
        "rebalance": report("rebalance", &["modulus", "chi_source", "chi_target", "moves", "profile"], json!({
            "modulus": uint(), "chi_source": int(), "chi_target": int(),
            "moves": array(cone_move()),
            "profile": { "type": "object", "additionalProperties": int() },
        })),
        "check smith": report("check smith", &["entries", "pass"], smith_report_props()),
        "check verdict": report(
            "check verdict",
            &["modulus", "global_congruence", "local_congruences", "weakly_g_connected", "smith", "trace", "conclusion", "pseudo_equivalence_level"],
            json!({
                "modulus": modulus(),
                "global_congruence": check_state(),
                "local_congruences": array(check_state()),
                "weakly_g_connected": nullable(json!({ "type": "boolean" })),
                "smith": nullable(object(&["entries", "pass"], smith_report_props())),
                "trace": nullable(trace_reports),
                "conclusion": conclusion(),
                "pseudo_equivalence_level": { "const": "homology" },
            }),
        ),
        "check cyclic": report(
            "check cyclic",
            &["gamma", "members", "sum_fixed_x", "sum_fixed_y", "pass", "coefficient", "expected_coefficient", "coefficient_matches"],
            cyclic_props(),
        ),
        "check compwise": report("check compwise", &["groups", "pass"], compwise_props()),
        "trace rank": report("trace rank", &["classes", "components"], json!({
            "classes": array(object(&["representative", "elements", "coefficient"], json!({
                "representative": uint(), "elements": array(uint()), "coefficient": rational()
            }))),
            "components": array(object(&["cells", "stabilizer", "class_id"], json!({
                "cells": array(uint()), "stabilizer": array(uint()), "class_id": uint()
            }))),
        })),
        "catalog": report("catalog", &[], json!({
            "groups": array(json!({ "type": "string" })),
            "complexes": array(json!({ "type": "string" })),
            "name": { "type": "string" },
            "group": bare(group_input()),
            "complex": bare(complex_input()),
        })),
        "error": report("", &["error"], json!({
            "error": object(&["kind", "message"], json!({ "kind": { "type": "string" }, "message": { "type": "string" } })),
        })),
    })
}

/// Every schema, keyed by input format or report command.
pub fn all() -> Value {
    let mut error = reports()["error"].clone();
    error["properties"]["command"] = json!({ "type": "string" });
    let mut r = reports();
    r["error"] = error;
    json!({
        "schema_version": SCHEMA_VERSION,
        "inputs": {
            "group": group_input(),
            "complex": complex_input(),
            "extension": extension_input(),
            "profile": profile_input(),
            "deficits": deficits_input(),
        },
        "reports": r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_every_command() {
        let r = reports();
        for k in [
            "classify",
            "degree-zero",
            "complex fixed",
            "complex homology",
            "rebalance",
            "check smith",
            "check verdict",
            "check cyclic",
            "check compwise",
            "trace rank",
            "catalog",
            "error",
        ] {
            assert_eq!(r[k]["type"], "object", "{k}");
        }
    }

    #[test]
    fn nested_schemas_drop_the_dialect() {
        let p = profile_input();
        assert!(p.get("$schema").is_some());
        assert!(p["properties"]["complex"].get("$schema").is_none());
        assert!(p["properties"]["complex"]["properties"]["group"].get("$schema").is_none());
    }
}
