//! Edge-list and labeling text files, plus metrics JSON.
//!
//! Edge files hold one `u<TAB>v` (tsv) or `u,v` (csv) pair per line. `#`
//! starts a comment and blank lines are skipped. Ids are unsigned 64-bit
//! integers unless string encoding is requested, in which case tokens are
//! assigned dense ids in first-seen order.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rustc_hash::FxHashMap;

use crate::engine::RunMetrics;
use crate::error::{Result, UfsError};
use crate::labeling::ComponentLabeling;
use crate::types::{Edge, NodeId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeFormat {
    #[default]
    Tsv,
    Csv,
}

impl EdgeFormat {
    pub fn delimiter(self) -> char {
        match self {
            EdgeFormat::Tsv => '\t',
            EdgeFormat::Csv => ',',
        }
    }

    /// `.csv` files are csv, everything else tsv.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => EdgeFormat::Csv,
            _ => EdgeFormat::Tsv,
        }
    }
}

impl FromStr for EdgeFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(EdgeFormat::Tsv),
            "csv" => Ok(EdgeFormat::Csv),
            other => Err(format!("unknown edge format `{other}` (expected tsv or csv)")),
        }
    }
}

impl fmt::Display for EdgeFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeFormat::Tsv => "tsv",
            EdgeFormat::Csv => "csv",
        })
    }
}

/// Bijection between external string ids and dense node ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdDictionary {
    forward: FxHashMap<String, NodeId>,
    reverse: Vec<String>,
}

impl IdDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id for `token`, assigning the next dense id on first sight.
    pub fn encode(&mut self, token: &str) -> NodeId {
        if let Some(&id) = self.forward.get(token) {
            return id;
        }
        let id = NodeId(self.reverse.len() as u64);
        self.forward.insert(token.to_owned(), id);
        self.reverse.push(token.to_owned());
        id
    }

    pub fn get(&self, token: &str) -> Option<NodeId> {
        self.forward.get(token).copied()
    }

    pub fn decode(&self, id: NodeId) -> Option<&str> {
        self.reverse.get(id.0 as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.reverse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reverse.is_empty()
    }
}

fn parse_id(token: &str, line: usize) -> Result<NodeId> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(UfsError::Parse { line, message: format!("`{token}` is not an unsigned integer id") });
    }
    token.parse::<u64>().map(NodeId).map_err(|_| UfsError::Overflow { line, token: token.to_owned() })
}

/// Data portion of a line (comment stripped, trimmed), or `None` if nothing is left.
fn content(line: &str) -> Option<&str> {
    let data = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let data = data.trim();
    (!data.is_empty()).then_some(data)
}

fn split_pair(data: &str, format: EdgeFormat, line: usize) -> Result<(&str, &str)> {
    let mut fields = data.split(format.delimiter()).map(str::trim);
    match (fields.next(), fields.next(), fields.next()) {
        (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => Ok((a, b)),
        _ => Err(UfsError::Parse {
            line,
            message: format!("expected two {format}-separated ids, got `{data}`"),
        }),
    }
}

/// Parses an edge list. With `encode_strings`, returns the dictionary used.
pub fn parse_edges<R: BufRead>(
    reader: R,
    format: EdgeFormat,
    encode_strings: bool,
) -> Result<(Vec<Edge>, Option<IdDictionary>)> {
    let mut dict = encode_strings.then(IdDictionary::new);
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let Some(data) = content(&line) else { continue };
        let (a, b) = split_pair(data, format, lineno)?;
        let edge = match dict.as_mut() {
            Some(d) => Edge { u: d.encode(a), v: d.encode(b) },
            None => Edge { u: parse_id(a, lineno)?, v: parse_id(b, lineno)? },
        };
        edges.push(edge);
    }
    Ok((edges, dict))
}

pub fn read_edges(
    path: impl AsRef<Path>,
    format: EdgeFormat,
    encode_strings: bool,
) -> Result<(Vec<Edge>, Option<IdDictionary>)> {
    parse_edges(BufReader::new(File::open(path)?), format, encode_strings)
}

pub fn write_edges_to<W: Write>(mut w: W, edges: &[Edge], format: EdgeFormat) -> Result<()> {
    let d = format.delimiter();
    for e in edges {
        writeln!(w, "{}{d}{}", e.u, e.v)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_edges(path: impl AsRef<Path>, edges: &[Edge], format: EdgeFormat) -> Result<()> {
    write_edges_to(BufWriter::new(File::create(path)?), edges, format)
}

/// Writes `child<TAB>root` lines sorted by child; by external id when a
/// dictionary is given.
pub fn write_labeling_to<W: Write>(mut w: W, labeling: &ComponentLabeling, dict: Option<&IdDictionary>) -> Result<()> {
    match dict {
        None => {
            for (child, root) in labeling.iter() {
                writeln!(w, "{child}\t{root}")?;
            }
        }
        Some(d) => {
            let name = |id: NodeId| {
                d.decode(id).ok_or_else(|| UfsError::Parse { line: 0, message: format!("node {id} missing from dictionary") })
            };
            let mut lines = labeling.iter().map(|(c, r)| Ok((name(c)?, name(r)?))).collect::<Result<Vec<_>>>()?;
            lines.sort_unstable();
            for (child, root) in lines {
                writeln!(w, "{child}\t{root}")?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_labeling(path: impl AsRef<Path>, labeling: &ComponentLabeling, dict: Option<&IdDictionary>) -> Result<()> {
    write_labeling_to(BufWriter::new(File::create(path)?), labeling, dict)
}

/// Reads a labeling file. With a dictionary, tokens go through it (new
/// tokens get fresh ids); otherwise they must be integers.
pub fn parse_labeling<R: BufRead>(reader: R, mut dict: Option<&mut IdDictionary>) -> Result<ComponentLabeling> {
    let mut pairs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let Some(data) = content(&line) else { continue };
        let (a, b) = split_pair(data, EdgeFormat::Tsv, lineno)?;
        let pair = match dict.as_deref_mut() {
            Some(d) => (d.encode(a), d.encode(b)),
            None => (parse_id(a, lineno)?, parse_id(b, lineno)?),
        };
        pairs.push((lineno, pair));
    }
    pairs.sort_unstable_by_key(|&(line, (c, _))| (c, line));
    for w in pairs.windows(2) {
        if w[0].1 .0 == w[1].1 .0 && w[0].1 .1 != w[1].1 .1 {
            return Err(UfsError::Parse { line: w[1].0, message: format!("node {} labeled twice", w[1].1 .0) });
        }
    }
    Ok(ComponentLabeling::from_pairs(pairs.into_iter().map(|(_, p)| p)))
}

pub fn read_labeling(path: impl AsRef<Path>, dict: Option<&mut IdDictionary>) -> Result<ComponentLabeling> {
    parse_labeling(BufReader::new(File::open(path)?), dict)
}

pub fn write_metrics_to<W: Write>(mut w: W, metrics: &RunMetrics) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, metrics)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn write_metrics(path: impl AsRef<Path>, metrics: &RunMetrics) -> Result<()> {
    write_metrics_to(BufWriter::new(File::create(path)?), metrics)
}

pub fn read_metrics(path: impl AsRef<Path>) -> Result<RunMetrics> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}
