use serde_json::{json, Value};

const NUM: &str = "number";
/// Finite numbers, or the strings `inf`, `-inf`, `nan`.
const EXT: &str = "number|string";

fn props(fields: &[(&str, &str)]) -> Value {
    let mut m = serde_json::Map::new();
    for &(k, t) in fields {
        let ty: Value = if t.contains('|') { json!(t.split('|').collect::<Vec<_>>()) } else { json!(t) };
        m.insert(k.to_string(), json!({ "type": ty }));
    }
    Value::Object(m)
}

fn object(fields: &[(&str, &str)]) -> Value {
    json!({ "type": "object", "properties": props(fields) })
}

fn scaling_report() -> Value {
    json!({
        "type": "object",
        "properties": {
            "quantity": { "type": "string" },
            "gamma": { "type": NUM },
            "psi": { "type": NUM },
            "sizes": { "type": "array", "items": { "type": "integer" } },
            "scales": { "type": "array", "items": { "type": NUM } },
            "replicas": { "type": "integer" },
            "per_size": object(&[("median_log", "array"), ("q25_log", "array"), ("q75_log", "array"), ("mean_log", "array"), ("count", "array")]),
            "slope": { "type": ["number", "string"] },
            "slope_stderr": { "type": ["number", "string"] },
            "intercept": { "type": ["number", "string"] },
            "seed": { "type": "integer" },
            "ledger_path": { "type": ["string", "null"] },
            "window": object(&[("delta", NUM), ("upper_log", "array"), ("fraction_inside", "array")]),
            "failures": { "type": "array", "items": { "type": "string" } }
        }
    })
}

/// JSON schema of the document printed by `command`.
pub fn schema(command: &str) -> Value {
    let result = match command {
        "sample" => object(&[
            ("domain", "array"),
            ("kind", "string"),
            ("seed", "integer"),
            ("max", NUM),
            ("origin", NUM),
            ("csv", "string"),
            ("sidecar", "string"),
            ("values", "array"),
        ]),
        "resistance" => object(&[
            ("value_log", EXT),
            ("value", EXT),
            ("source", "array"),
            ("target", "array"),
            ("residual", NUM),
            ("iterations", "integer"),
        ]),
        "walk" => object(&[
            ("walk", "object"),
            ("boundary", "string"),
            ("seed", "integer"),
            ("steps_taken", "integer"),
            ("final_time", NUM),
            ("final_position", "array"),
            ("exited", "boolean"),
            ("max_distance", "integer"),
        ]),
        "heatkernel" => object(&[("T", "integer"), ("p_return", NUM), ("field_seed", "integer"), ("gamma", NUM)]),
        "exittime" => object(&[
            ("n", "integer"),
            ("gamma", NUM),
            ("field_seed", "integer"),
            ("exit_time", NUM),
            ("log_stationary_mass", NUM),
            ("log_resistance", NUM),
            ("hitting_residual", NUM),
            ("commute_residual", NUM),
            ("voltage_residual", NUM),
        ]),
        "scaling" => json!({ "type": "array", "items": scaling_report() }),
        "crossing" => object(&[
            ("rect", "array"),
            ("orientation", "string"),
            ("restricted", "array"),
            ("value_log", EXT),
            ("value", EXT),
            ("dual_value_log", EXT),
        ]),
        _ => json!({}),
    };
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": format!("rcmlab {command}"),
        "type": "object",
        "required": ["command", "config", "result"],
        "properties": {
            "command": { "type": "string" },
            "config": { "type": "object" },
            "timestamp": { "type": "integer" },
            "result": result
        }
    })
}
