//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! n 4
//! matrix -111
//! matrix 0-11
//! matrix 00-1
//! matrix 000-
//! demand 0 1
//! round 0 1 0
//! weight 0 1 3
//! ```
//!
//! Row character `1` at column `j` of row `i` means `i` beats `j`; the
//! diagonal is `-` and asymmetry is enforced. Tournament-fixing files carry a
//! `target <v>` line instead of demand lines. Serialization is canonical:
//! demand, round and weight lines sorted.

use demand_tf::model::{
    validate_instance, DemandInstance, Player, TournamentDigraph, ValidateError,
};

/// A tournament-fixing instance: make `target` win the whole bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TfInstance {
    pub tournament: TournamentDigraph,
    pub target: Player,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedFile {
    Demand(DemandInstance),
    Tf(TfInstance),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// Parses an instance file and surfaces all structural validation errors.
pub fn parse_instance(text: &str) -> Result<ParsedFile, ParseError> {
    let mut n: Option<usize> = None;
    let mut rows: Vec<(usize, String)> = Vec::new();
    let mut demands: Vec<(Player, Player)> = Vec::new();
    let mut rounds: Vec<((Player, Player), u32)> = Vec::new();
    let mut weights: Vec<((Player, Player), u64)> = Vec::new();
    let mut target: Option<(usize, Player)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();
        match keyword {
            "n" => {
                if n.is_some() {
                    return err(lineno, "duplicate n line");
                }
                n = Some(parse_int(lineno, &rest, 0, "n")? as usize);
            }
            "matrix" => {
                if rest.len() != 1 {
                    return err(lineno, "matrix expects one row of characters");
                }
                rows.push((lineno, rest[0].to_string()));
            }
            "demand" => {
                let u = parse_int(lineno, &rest, 0, "demand")? as Player;
                let v = parse_int(lineno, &rest, 1, "demand")? as Player;
                demands.push((u, v));
            }
            "round" => {
                let u = parse_int(lineno, &rest, 0, "round")? as Player;
                let v = parse_int(lineno, &rest, 1, "round")? as Player;
                let r = parse_int(lineno, &rest, 2, "round")? as u32;
                if rounds.iter().any(|&((a, b), _)| (a, b) == (u, v)) {
                    return err(lineno, format!("duplicate round line for ({u},{v})"));
                }
                rounds.push(((u, v), r));
            }
            "weight" => {
                let u = parse_int(lineno, &rest, 0, "weight")? as Player;
                let v = parse_int(lineno, &rest, 1, "weight")? as Player;
                let w = parse_int(lineno, &rest, 2, "weight")?;
                if weights.iter().any(|&((a, b), _)| (a, b) == (u, v)) {
                    return err(lineno, format!("duplicate weight line for ({u},{v})"));
                }
                weights.push(((u, v), w));
            }
            "target" => {
                if target.is_some() {
                    return err(lineno, "duplicate target line");
                }
                target = Some((lineno, parse_int(lineno, &rest, 0, "target")? as Player));
            }
            other => return err(lineno, format!("unknown directive '{other}'")),
        }
    }

    let n = n.ok_or(ParseError { line: 1, msg: "missing 'n' line".into() })?;
    if rows.len() != n {
        return err(
            rows.last().map_or(1, |(l, _)| *l),
            format!("expected {n} matrix rows, found {}", rows.len()),
        );
    }
    let mut beats = vec![false; n * n];
    for (i, (lineno, row)) in rows.iter().enumerate() {
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != n {
            return err(*lineno, format!("row has {} characters, expected {n}", chars.len()));
        }
        for (j, &c) in chars.iter().enumerate() {
            match c {
                '-' if i == j => {}
                '0' | '1' if i != j => beats[i * n + j] = c == '1',
                '-' => return err(*lineno, format!("off-diagonal '-' at column {j}")),
                _ => return err(*lineno, format!("bad character '{c}' at column {j}")),
            }
        }
    }
    // asymmetry: exactly one of (i,j),(j,i)
    for i in 0..n {
        for j in (i + 1)..n {
            if beats[i * n + j] == beats[j * n + i] {
                let lineno = rows[i].0;
                return err(
                    lineno,
                    format!("matrix is not a tournament at pair ({i},{j}): exactly one direction must win"),
                );
            }
        }
    }
    let tournament =
        TournamentDigraph::from_matrix(n, beats).expect("asymmetry checked above");

    if let Some((lineno, v)) = target {
        if !demands.is_empty() || !rounds.is_empty() || !weights.is_empty() {
            return err(lineno, "a target line cannot be mixed with demand lines");
        }
        if v >= n {
            return err(lineno, format!("target {v} out of range for n={n}"));
        }
        return Ok(ParsedFile::Tf(TfInstance { tournament, target: v }));
    }

    let mut inst = DemandInstance::new(tournament).with_demands(demands);
    inst.rounds = rounds.into_iter().collect();
    inst.weights = weights.into_iter().collect();
    match validate_instance(inst.clone()) {
        Ok(_) => Ok(ParsedFile::Demand(inst)),
        Err(e) => Err(ParseError { line: validate_error_line(&e), msg: e.to_string() }),
    }
}

// Structural errors discovered by validation have no single source line;
// point at the header.
fn validate_error_line(_e: &ValidateError) -> usize {
    1
}

fn parse_int(line: usize, parts: &[&str], idx: usize, what: &str) -> Result<u64, ParseError> {
    let s = parts
        .get(idx)
        .ok_or_else(|| ParseError { line, msg: format!("{what}: missing argument {}", idx + 1) })?;
    s.parse::<u64>()
        .map_err(|_| ParseError { line, msg: format!("{what}: '{s}' is not a non-negative integer") })
}

/// Canonical serialization; [`parse_instance`] of the output round-trips
/// byte-identically.
pub fn serialize_instance(inst: &DemandInstance) -> String {
    let mut out = header(&inst.tournament);
    let mut demands = inst.demands.clone();
    demands.sort_unstable();
    demands.dedup();
    for (u, v) in demands {
        out.push_str(&format!("demand {u} {v}\n"));
    }
    for (&(u, v), &r) in &inst.rounds {
        out.push_str(&format!("round {u} {v} {r}\n"));
    }
    for (&(u, v), &w) in &inst.weights {
        out.push_str(&format!("weight {u} {v} {w}\n"));
    }
    out
}

pub fn serialize_tf(tf: &TfInstance) -> String {
    let mut out = header(&tf.tournament);
    out.push_str(&format!("target {}\n", tf.target));
    out
}

fn header(t: &TournamentDigraph) -> String {
    let n = t.n();
    let mut out = format!("n {n}\n");
    for i in 0..n {
        out.push_str("matrix ");
        for j in 0..n {
            out.push(if i == j {
                '-'
            } else if t.beats(i, j) {
                '1'
            } else {
                '0'
            });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let text = "n 2\nmatrix -1\nmatrix 0-\ndemand 0 1\n";
        let ParsedFile::Demand(inst) = parse_instance(text).unwrap() else {
            panic!("expected demand instance");
        };
        assert_eq!(inst.tournament.n(), 2);
        assert_eq!(inst.demands, vec![(0, 1)]);
    }

    #[test]
    fn parses_round_lines() {
        let text = "n 2\nmatrix -1\nmatrix 0-\ndemand 0 1\nround 0 1 0\n";
        let ParsedFile::Demand(inst) = parse_instance(text).unwrap() else {
            panic!("expected demand instance");
        };
        assert_eq!(inst.rounds.get(&(0, 1)), Some(&0));
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let text = "n 2\nmatrix -1\nmatrix 1-\n";
        let e = parse_instance(text).unwrap_err();
        assert!(e.msg.contains("not a tournament"), "{e}");
    }

    #[test]
    fn reports_line_numbers() {
        let text = "n 2\nmatrix -1\nmatrix 0-\nbogus 1 2\n";
        let e = parse_instance(text).unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn surfaces_validation_errors() {
        // (1,0) is not an arc: 0 beats 1
        let text = "n 2\nmatrix -1\nmatrix 0-\ndemand 1 0\n";
        let e = parse_instance(text).unwrap_err();
        assert!(e.msg.contains("not an arc"), "{e}");
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# header\nn 2\n\nmatrix -1  # row of 0\nmatrix 0-\n";
        assert!(parse_instance(text).is_ok());
    }

    #[test]
    fn tf_files_take_target() {
        let text = "n 2\nmatrix -1\nmatrix 0-\ntarget 1\n";
        let ParsedFile::Tf(tf) = parse_instance(text).unwrap() else {
            panic!("expected tf instance");
        };
        assert_eq!(tf.target, 1);
        assert_eq!(serialize_tf(&tf), text);
    }

    #[test]
    fn round_trip_is_byte_identical_on_canonical_files() {
        let text = "n 4\nmatrix -111\nmatrix 0-11\nmatrix 00-1\nmatrix 000-\ndemand 0 1\ndemand 1 2\nround 1 2 0\nweight 0 1 5\n";
        let ParsedFile::Demand(inst) = parse_instance(text).unwrap() else {
            panic!("expected demand instance");
        };
        assert_eq!(serialize_instance(&inst), text);
    }

    #[test]
    fn serialization_canonicalizes_demand_order() {
        let text = "n 4\nmatrix -111\nmatrix 0-11\nmatrix 00-1\nmatrix 000-\ndemand 1 2\ndemand 0 1\n";
        let ParsedFile::Demand(inst) = parse_instance(text).unwrap() else {
            panic!("expected demand instance");
        };
        let canon = serialize_instance(&inst);
        assert!(canon.contains("demand 0 1\ndemand 1 2\n"));
        let ParsedFile::Demand(again) = parse_instance(&canon).unwrap() else {
            panic!("expected demand instance");
        };
        assert_eq!(serialize_instance(&again), canon);
    }
}
