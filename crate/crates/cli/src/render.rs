//! Bracket rendering: round-by-round text and DOT digraphs.

use std::collections::BTreeSet;

use demand_tf::arborescence::{is_binomial_arborescence, RootedForest};
use demand_tf::model::Player;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("input is not a spanning binomial arborescence")]
    NotAnSba,
}

/// Renders an SBA as played matches. Demand arcs are highlighted in the DOT
/// output.
pub fn render_bracket(
    sba: &RootedForest,
    demands: &BTreeSet<(Player, Player)>,
    format: RenderFormat,
) -> Result<String, RenderError> {
    let mut roots = sba.roots();
    let root = match (roots.next(), roots.next()) {
        (Some(r), None) => r,
        _ => return Err(RenderError::NotAnSba),
    };
    if !is_binomial_arborescence(sba, root) {
        return Err(RenderError::NotAnSba);
    }
    let sizes = sba.subtree_sizes();
    // the match (u,v) happens in the round equal to the loser's height
    let mut matches: Vec<(u32, Player, Player)> = sba
        .arcs()
        .map(|(u, v)| (sizes[v].trailing_zeros(), u, v))
        .collect();
    matches.sort_unstable();
    Ok(match format {
        RenderFormat::Text => {
            let mut out = String::new();
            for (r, u, v) in matches {
                out.push_str(&format!("round {r}: {u} def {v}\n"));
            }
            out
        }
        RenderFormat::Dot => {
            let mut out = String::from("digraph bracket {\n");
            for v in 0..sba.n() {
                out.push_str(&format!("  p{v} [label=\"{v}\"];\n"));
            }
            for (r, u, v) in matches {
                let style = if demands.contains(&(u, v)) {
                    ", color=red, penwidth=2.0"
                } else {
                    ""
                };
                out.push_str(&format!("  p{u} -> p{v} [label=\"r{r}\"{style}];\n"));
            }
            out.push_str("}\n");
            out
        }
    })
}
