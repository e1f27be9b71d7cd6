//! The `HPART1` text format.
//!
//! ```text
//! HPART1 <n> <m> <count>
//! <index> <leader>
//! <generator row>        (dimension many rows)
//! ...
//! ```
//!
//! Vectors are strings of `0`/`1` with coordinate `k` at character `k - 1`.
//! A regular partition has `count = n + 1` components, each followed by
//! `n - m` generator rows in reduced echelon form. An extended partition has
//! `n = 2^m` and `count = n`, with `n - 1 - m` rows per component. Blank
//! lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::codes::{Coset, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::partition::{
    leader_index, uniformity, verify_partition, CodePartition, ExtendedPartition, PartitionCertificate,
    UniformityReport, Verdict, Violation, VerifyMode, EXHAUSTIVE_MAX_LENGTH,
};

pub const FORMAT_TAG: &str = "HPART1";

/// Contents of a partition file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionData {
    Regular(CodePartition),
    Extended(ExtendedPartition),
}

impl PartitionData {
    pub fn length(&self) -> usize {
        match self {
            PartitionData::Regular(p) => p.length(),
            PartitionData::Extended(e) => e.length(),
        }
    }

    pub fn into_regular(self) -> Result<CodePartition> {
        match self {
            PartitionData::Regular(p) => Ok(p),
            PartitionData::Extended(_) => Err(Error::Unsupported(
                "expected a partition of F^n, found an extended partition".into(),
            )),
        }
    }
}

fn write_component(out: &mut String, index: usize, rep: &BitVector, code: &LinearCode) {
    let _ = writeln!(out, "{index} {rep}");
    let (rows, _) = code.generator().rref();
    for r in 0..rows.rows() {
        let _ = writeln!(out, "{}", rows.row(r));
    }
}

pub fn serialize(p: &CodePartition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_TAG} {} {} {}", p.length(), p.redundancy(), p.len());
    for (i, c) in p.components().iter().enumerate() {
        write_component(&mut out, i, c.leader(), c.code());
    }
    out
}

pub fn serialize_extended(e: &ExtendedPartition) -> String {
    let mut out = String::new();
    let m = e.length().trailing_zeros();
    let _ = writeln!(out, "{FORMAT_TAG} {} {m} {}", e.length(), e.components().len());
    for (i, c) in e.components().iter().enumerate() {
        write_component(&mut out, i, c.representative(), c.code());
    }
    out
}

pub fn serialize_data(d: &PartitionData) -> String {
    match d {
        PartitionData::Regular(p) => serialize(p),
        PartitionData::Extended(e) => serialize_extended(e),
    }
}

/// Parsed file plus the line each component starts on, for diagnostics.
struct Parsed {
    data: PartitionData,
    component_lines: Vec<usize>,
}

fn format_error(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

fn parse_vector(text: &str, n: usize, line: usize) -> Result<BitVector> {
    let v: BitVector = text
        .parse()
        .map_err(|_| format_error(line, format!("`{text}` is not a 0/1 string")))?;
    if v.len() != n {
        return Err(format_error(line, format!("expected {n} symbols, found {}", v.len())));
    }
    Ok(v)
}

fn parse_inner(text: &str) -> Result<Parsed> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| format_error(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.first() != Some(&FORMAT_TAG) || fields.len() != 4 {
        return Err(format_error(hline, format!("expected `{FORMAT_TAG} <n> <m> <count>`")));
    }
    let num = |k: usize| {
        fields[k]
            .parse::<usize>()
            .map_err(|_| format_error(hline, format!("`{}` is not a number", fields[k])))
    };
    let (n, m, count) = (num(1)?, num(2)?, num(3)?);
    if !(2..=24).contains(&m) {
        return Err(format_error(hline, format!("unsupported redundancy {m}")));
    }
    let extended = if n + 1 == 1 << m && count == n + 1 {
        false
    } else if n == 1 << m && count == n {
        true
    } else {
        return Err(format_error(
            hline,
            format!("no partition has n = {n}, m = {m} and {count} components"),
        ));
    };
    let dim = if extended { n - 1 - m } else { n - m };

    let mut slots: Vec<Option<(usize, BitVector, Arc<LinearCode>)>> = vec![None; count];
    let mut codes: HashMap<Vec<BitVector>, Arc<LinearCode>> = HashMap::new();
    for _ in 0..count {
        let (cline, head) = lines
            .next()
            .ok_or_else(|| format_error(text.lines().count(), format!("expected {count} components")))?;
        let mut parts = head.split_whitespace();
        let index: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format_error(cline, "expected `<index> <leader>`"))?;
        let rep_text = parts.next().ok_or_else(|| format_error(cline, "missing leader"))?;
        if parts.next().is_some() {
            return Err(format_error(cline, "trailing fields after the leader"));
        }
        if index >= count {
            return Err(format_error(cline, format!("component index {index} out of range")));
        }
        if let Some((first, ..)) = &slots[index] {
            return Err(format_error(
                cline,
                format!("component index {index} already defined on line {first}"),
            ));
        }
        let rep = parse_vector(rep_text, n, cline)?;
        if !extended && leader_index(&rep) != Some(index) {
            return Err(format_error(
                cline,
                format!("component {index} must have leader {}", if index == 0 { "0" } else { "e_index" }),
            ));
        }
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (rline, row) = lines
                .next()
                .ok_or_else(|| format_error(cline, format!("component {index} needs {dim} generator rows")))?;
            rows.push(parse_vector(row, n, rline)?);
        }
        let code = match codes.get(&rows) {
            Some(c) => c.clone(),
            None => {
                let g = BitMatrix::from_rows(n, &rows)?;
                let code = LinearCode::from_generator(g).map_err(|e| format_error(cline, e.to_string()))?;
                if code.dimension() != dim {
                    return Err(format_error(cline, format!("generator rows of component {index} are dependent")));
                }
                let code = Arc::new(code);
                codes.insert(rows, code.clone());
                code
            }
        };
        slots[index] = Some((cline, rep, code));
    }
    if let Some((line, _)) = lines.next() {
        return Err(format_error(line, "unexpected content after the last component"));
    }

    let component_lines: Vec<usize> = slots.iter().map(|s| s.as_ref().map_or(0, |s| s.0)).collect();
    let cosets = slots
        .into_iter()
        .map(|s| {
            let (line, rep, code) = s.expect("every index filled");
            Coset::new(code, rep).map_err(|e| format_error(line, e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let data = if extended {
        PartitionData::Extended(ExtendedPartition::from_components(cosets).map_err(|e| format_error(hline, e.to_string()))?)
    } else {
        PartitionData::Regular(CodePartition::from_cosets(cosets).map_err(|e| format_error(hline, e.to_string()))?)
    };
    Ok(Parsed { data, component_lines })
}

/// Parses and checks the structure of a partition file. No coverage check is
/// made; see [`import_verified`].
pub fn parse(text: &str) -> Result<PartitionData> {
    parse_inner(text).map(|p| p.data)
}

pub fn read_file(path: &Path) -> Result<PartitionData> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_file(path: &Path, d: &PartitionData) -> Result<()> {
    std::fs::write(path, serialize_data(d))?;
    Ok(())
}

/// A partition accepted by the certifier.
#[derive(Clone, Debug)]
pub struct Imported {
    pub partition: CodePartition,
    pub certificate: PartitionCertificate,
    pub report: UniformityReport,
}

fn located(v: &Violation, lines: &[usize]) -> String {
    match v {
        Violation::Overlap { first, second, .. } | Violation::MultiplyCovered { first, second, .. } => {
            format!("{v} (components on lines {} and {})", lines[*first], lines[*second])
        }
        _ => v.to_string(),
    }
}

/// Parses `text`, checks that it partitions `F^n` (exhaustively as well when
/// `n <= 15`) and, when `claimed` is given, that the certified uniformity
/// number equals it.
pub fn import_verified_str(text: &str, claimed: Option<usize>) -> Result<Imported> {
    let parsed = parse_inner(text)?;
    let lines = parsed.component_lines;
    let partition = parsed.data.into_regular()?;
    let mode = if partition.length() <= EXHAUSTIVE_MAX_LENGTH {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::Algebraic
    };
    let certificate = verify_partition(&partition, mode)?;
    if !certificate.modes_agree() {
        return Err(Error::VerificationFailed("algebraic and exhaustive checks disagree".into()));
    }
    if let Verdict::Invalid(v) = &certificate.algebraic {
        return Err(Error::VerificationFailed(located(v, &lines)));
    }
    let report = uniformity(&partition)?;
    if let Some(u) = claimed {
        if report.uniformity_number != Some(u) {
            return Err(Error::VerificationFailed(format!(
                "claimed uniformity number {u}, certified {}",
                report
                    .uniformity_number
                    .map_or_else(|| format!("non-uniform {}", report.signature()), |v| v.to_string())
            )));
        }
    }
    Ok(Imported {
        partition,
        certificate,
        report,
    })
}

pub fn import_verified(path: &Path, claimed: Option<usize>) -> Result<Imported> {
    import_verified_str(&std::fs::read_to_string(path)?, claimed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::hamming_code_natural;
    use crate::partition::{phelps_search, trivial_partition};

    fn trivial7() -> CodePartition {
        trivial_partition(Arc::new(hamming_code_natural(3).unwrap())).unwrap()
    }

    #[test]
    fn round_trip_phelps() {
        let p = phelps_search(2, 1).unwrap().remove(0);
        let text = serialize(&p);
        assert_eq!(parse(&text).unwrap(), PartitionData::Regular(p));
    }

    #[test]
    fn round_trip_extended() {
        let e = trivial7().extend();
        let text = serialize_extended(&e);
        assert!(text.starts_with("HPART1 8 3 8\n"));
        assert_eq!(parse(&text).unwrap(), PartitionData::Extended(e));
    }

    #[test]
    fn trivial_three_text() {
        let p = trivial_partition(Arc::new(hamming_code_natural(2).unwrap())).unwrap();
        assert_eq!(serialize(&p), "HPART1 3 2 4\n0 000\n111\n1 100\n111\n2 010\n111\n3 001\n111\n");
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# three\n\nHPART1 3 2 4\n0 000\n111\n\n1 100\n# row\n111\n2 010\n111\n3 001\n111\n";
        assert!(parse(text).is_ok());
    }

    #[test]
    fn duplicated_index_reports_line() {
        let text = "HPART1 3 2 4\n0 000\n111\n1 100\n111\n1 100\n111\n3 001\n111\n";
        match parse(text) {
            Err(Error::Format { line, message }) => {
                assert_eq!(line, 6);
                assert!(message.contains("line 4"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs_rejected_with_position() {
        let cases = [
            ("HPART2 3 2 4\n", 1),
            ("HPART1 3 2 5\n", 1),
            ("HPART1 3 2 4\n0 000\n11\n", 3),
            ("HPART1 3 2 4\n0 000\n1x1\n", 3),
            ("HPART1 3 2 4\n0 100\n111\n", 2),
            ("HPART1 3 2 4\n0 000\n111\n1 100\n111\n2 010\n111\n3 001\n111\nextra\n", 10),
        ];
        for (text, want) in cases {
            match parse(text) {
                Err(Error::Format { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn import_rejects_overlaps_with_lines() {
        // component 2 uses a different code under which it meets component 1
        let p = trivial7();
        let mut text = serialize(&p);
        let other = Arc::new(crate::codes::hamming_code(3, &[2, 1, 3, 4, 5, 6, 7]).unwrap());
        let fake = Coset::new(other, BitVector::unit(7, 1)).unwrap();
        let mut block = String::new();
        write_component(&mut block, 2, fake.leader(), fake.code());
        let mut orig = String::new();
        write_component(&mut orig, 2, p.component(2).leader(), p.component(2).code());
        text = text.replace(&orig, &block);
        let err = import_verified_str(&text, None).unwrap_err().to_string();
        assert!(err.contains("lines"), "{err}");
    }

    #[test]
    fn import_checks_claimed_uniformity() {
        let text = serialize(&trivial7());
        assert_eq!(import_verified_str(&text, Some(4)).unwrap().report.uniformity_number, Some(4));
        assert!(import_verified_str(&text, Some(2)).is_err());
    }
}
