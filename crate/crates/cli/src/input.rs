//! Parsing of graph, eigenvalue and range arguments.

use std::ops::RangeInclusive;

use starcomp::exactla::{int, parse_rational};
use starcomp::graph::{cocktail, complete, complete_split, cycle, parse_graph6, path};
use starcomp::{Graph, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertices(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuList(pub Vec<Rational>);

/// A graph6 string or one of `split:s,t`, `cocktail:p`, `complete:n`,
/// `path:n`, `cycle:n`, `empty:n`.
pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let Some((kind, args)) = text.split_once(':') else {
        return parse_graph6(text).map_err(|e| format!("graph6 {text:?}: {e}"));
    };
    let numbers = args
        .split(',')
        .map(|a| a.trim().parse::<usize>().map_err(|_| format!("{text:?}: {a:?} is not a natural number")))
        .collect::<Result<Vec<_>, _>>()?;
    let built = match (kind, numbers.as_slice()) {
        ("split", &[s, t]) => complete_split(s, t),
        ("cocktail", &[p]) => cocktail(p),
        ("complete", &[n]) => complete(n),
        ("path", &[n]) => path(n),
        ("cycle", &[n]) => cycle(n),
        ("empty", &[n]) => Graph::empty(n),
        _ => {
            return Err(format!(
                "{text:?}: expected graph6 or one of split:s,t cocktail:p complete:n path:n cycle:n empty:n"
            ))
        }
    };
    built.map_err(|e| format!("{text:?}: {e}"))
}

pub fn parse_mu(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// `lo..hi` (inclusive) or a single value.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("{text:?} is not a range lo..hi");
    let (lo, hi) = text.split_once("..").unwrap_or((text, text));
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(format!("{text:?} is empty"));
    }
    Ok(lo..=hi)
}

/// `lo..hi` over the integers, or a comma-separated list of rationals.
pub fn parse_mu_list(text: &str) -> Result<MuList, String> {
    if let Some((lo, hi)) = text.split_once("..") {
        let bad = || format!("{text:?} is not an integer range lo..hi");
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(format!("{text:?} is empty"));
        }
        return Ok(MuList((lo..=hi).map(int).collect()));
    }
    text.split(',').map(parse_mu).collect::<Result<_, _>>().map(MuList)
}

pub fn parse_vertices(text: &str) -> Result<Vertices, String> {
    if text.trim().is_empty() {
        return Ok(Vertices(Vec::new()));
    }
    text.split(',')
        .map(|v| v.trim().parse().map_err(|_| format!("{v:?} is not a vertex index")))
        .collect::<Result<_, _>>()
        .map(Vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use starcomp::exactla::ratio;

    #[test]
    fn graphs() {
        assert_eq!(parse_graph("split:2,2").unwrap(), complete_split(2, 2).unwrap());
        assert_eq!(parse_graph("cocktail:3").unwrap().size(), 12);
        assert_eq!(parse_graph("E~~w").unwrap(), complete(6).unwrap());
        assert!(parse_graph("split:2").is_err());
        assert!(parse_graph("split:0,2").is_err());
        assert!(parse_graph("wheel:5").is_err());
        assert!(parse_graph("E~~").unwrap_err().contains("graph6"));
    }

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_range("2..4").unwrap(), 2..=4);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("4..2").is_err());
        assert_eq!(parse_mu_list("-3..-2").unwrap().0, vec![int(-3), int(-2)]);
        assert_eq!(parse_mu_list("-5/2,2").unwrap().0, vec![ratio(-5, 2), int(2)]);
        assert!(parse_mu_list("1.5").is_err());
        assert_eq!(parse_vertices("0, 2").unwrap().0, vec![0, 2]);
        assert!(parse_vertices("").unwrap().0.is_empty());
    }
}
