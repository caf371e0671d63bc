//! Corpus handling. A corpus file holds one ring expression per line;
//! blank lines and everything after a `#` are ignored. The built-in corpus
//! covers the small modular rings, Boolean rings, small fields, and every
//! pairwise product of those with order at most 64.

use std::path::Path;

use eb_core::dsl::{parse, RingExpr};
use eb_core::{Error, Result};

/// Expressions of the built-in corpus, in a fixed order.
pub fn default_corpus() -> Vec<String> {
    let mut atoms: Vec<(String, u64)> = Vec::new();
    for n in 1..=30u64 {
        atoms.push((format!("Z/{n}"), n));
    }
    for k in 1..=3u32 {
        atoms.push((format!("bool({k})"), 1 << k));
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        atoms.push((format!("GF({q})"), q));
    }
    let mut out: Vec<String> = atoms.iter().map(|(s, _)| s.clone()).collect();
    for (i, (a, oa)) in atoms.iter().enumerate() {
        for (b, ob) in atoms.iter().skip(i) {
            if oa * ob <= 64 {
                out.push(format!("{a} x {b}"));
            }
        }
    }
    out
}

/// The built-in corpus, parsed.
pub fn built_in_corpus() -> Vec<(String, RingExpr)> {
    default_corpus()
        .into_iter()
        .map(|s| {
            let e = parse(&s).expect("built-in corpus expressions parse");
            (s, e)
        })
        .collect()
}

/// Parse corpus text, reporting failures as `origin:line: message`.
pub fn parse_corpus_text(text: &str, origin: &str) -> Result<Vec<(String, RingExpr)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match parse(line) {
            Ok(e) => out.push((line.to_string(), e)),
            Err(err) => {
                return Err(Error::input(format!("{origin}:{}: {err}", i + 1)));
            }
        }
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<Vec<(String, RingExpr)>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::input(format!("cannot read corpus file {}: {e}", path.display()))
    })?;
    parse_corpus_text(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_has_atoms_and_products() {
        let c = default_corpus();
        assert!(c.contains(&"Z/30".to_string()));
        assert!(c.contains(&"bool(3)".to_string()));
        assert!(c.contains(&"GF(16)".to_string()));
        assert!(c.contains(&"Z/2 x Z/30".to_string()));
        assert!(c.contains(&"bool(3) x bool(3)".to_string()));
        assert!(!c.contains(&"Z/3 x Z/30".to_string()), "order 90 is over the pair cap");
        // Every expression parses.
        for s in &c {
            parse(s).unwrap();
        }
        // No duplicates.
        let mut sorted = c.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), c.len());
    }

    #[test]
    fn corpus_text_parses_with_comments() {
        let text = "# header\nZ/6\n\nGF(9) # inline note\n  bool(2)  \n";
        let parsed = parse_corpus_text(text, "inline").unwrap();
        let texts: Vec<&str> = parsed.iter().map(|(s, _)| s.as_str()).collect();
        assert_eq!(texts, vec!["Z/6", "GF(9)", "bool(2)"]);
    }

    #[test]
    fn corpus_errors_carry_file_and_line() {
        let text = "Z/6\nGF(6)\n";
        let err = parse_corpus_text(text, "bad.corpus").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bad.corpus:2:"), "{msg}");
        assert!(msg.contains("prime power"), "{msg}");
    }

    #[test]
    fn empty_corpus_is_fine() {
        assert!(parse_corpus_text("# nothing\n\n", "x").unwrap().is_empty());
    }
}
