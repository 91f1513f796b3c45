//! Builtin forbidden graphs addressable by name.

use crate::error::{Error, Result};
use crate::graph::{complete_graph, cycle_graph, path_graph, petersen_graph, Graph};
use crate::graph6;

pub const BUILTIN_NAMES: [&str; 6] = ["K3", "K4", "K5", "C5", "P3", "Petersen"];

pub fn builtin(name: &str) -> Option<Graph> {
    Some(match name {
        "K3" => complete_graph(3),
        "K4" => complete_graph(4),
        "K5" => complete_graph(5),
        "C5" => cycle_graph(5),
        "P3" => path_graph(3),
        "Petersen" | "petersen" => petersen_graph(),
        _ => return None,
    })
}

/// A builtin name or a graph6 string.
pub fn resolve(spec: &str) -> Result<Graph> {
    match builtin(spec) {
        Some(g) => Ok(g),
        None => graph6::decode(spec).map_err(|e| {
            Error::Input(format!(
                "'{spec}' is neither a builtin ({}) nor valid graph6: {e}",
                BUILTIN_NAMES.join(", ")
            ))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_encodings() {
        let enc: Vec<String> = BUILTIN_NAMES.iter().map(|n| graph6::encode(&builtin(n).unwrap())).collect();
        assert_eq!(enc, ["Bw", "C~", "D~{", "Dhc", "Bg", "IheA@GUAo"]);
        assert_eq!(resolve("Bw").unwrap().edge_count(), 3);
        assert!(resolve("nope!").is_err());
    }
}
