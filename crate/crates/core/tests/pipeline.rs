use std::sync::Arc;

use hampart::app::format::{self, import_verified, PartitionData};
use hampart::app::gold::gold_partition;
use hampart::app::theorem::{corollary_counts, theorem_table, RowStatus};
use hampart::app::{BuildContext, Recipe};
use hampart::codes::hamming_code_natural;
use hampart::partition::{trivial_partition, uniformity, verify_partition, VerifyMode};
use hampart::Error;

#[test]
fn build_write_import_verify() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = BuildContext::new();
    let p = ctx.build(&"B(trivial3, phelps7)".parse().unwrap()).unwrap();
    let path = dir.path().join("b31.hpart");
    format::write_file(&path, &PartitionData::Regular((*p).clone())).unwrap();
    let imported = import_verified(&path, None).unwrap();
    assert_eq!(&imported.partition, &*p);
    assert!(imported.certificate.is_valid());
    assert_eq!(imported.report.signature(), uniformity(&p).unwrap().signature());
}

#[test]
fn extend_and_puncture_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = BuildContext::new().build(&Recipe::Phelps7).unwrap();
    let ext = dir.path().join("ext.hpart");
    format::write_file(&ext, &PartitionData::Extended(p.extend())).unwrap();
    let PartitionData::Extended(e) = format::read_file(&ext).unwrap() else {
        panic!("expected an extended partition");
    };
    assert_eq!(e.signature().unwrap(), uniformity(&p).unwrap().signature());
    let back = e.puncture(7).unwrap();
    assert_eq!(back, *p);
}

#[test]
fn import_rejects_truncated_file_without_partial_result() {
    let dir = tempfile::tempdir().unwrap();
    let text = format::serialize(&trivial_partition(Arc::new(hamming_code_natural(3).unwrap())).unwrap());
    let cut: String = text.lines().take(20).map(|l| format!("{l}\n")).collect();
    let path = dir.path().join("cut.hpart");
    std::fs::write(&path, cut).unwrap();
    assert!(matches!(import_verified(&path, None), Err(Error::Format { .. })));
}

#[test]
fn gold_import_fills_odd_rows() {
    let mut ctx = BuildContext::new();
    let g = format::import_verified_str(&format::serialize(&gold_partition(5).unwrap()), Some(22)).unwrap();
    ctx.add_import(g.partition, 22);
    let t = theorem_table(5, &ctx).unwrap();
    assert_eq!(t.rows[0].status, RowStatus::BuiltAndVerified);
    assert_eq!(t.rows[2].status, RowStatus::BuiltAndVerified);
    // the B(trivial3, phelps7) row is valid but not uniform
    let mid = t.rows[1].measured.as_ref().unwrap();
    assert!(mid.valid);
    assert_eq!(mid.distinct_code_values, vec![24]);
    assert!(t.check().is_err());
}

#[test]
fn table_without_imports_skips() {
    let t = theorem_table(7, &BuildContext::new()).unwrap();
    assert!(matches!(t.rows[0].status, RowStatus::SkippedMissingImport(_)));
    assert!(matches!(t.rows[1].status, RowStatus::SkippedMissingImport(_)));
    assert_eq!(t.rows[3].status, RowStatus::BuiltAndVerified);
    assert!(t.rows[0].recipe_text().starts_with("requires-import"));
}

#[test]
fn counts_m5_and_m6() {
    let c = corollary_counts(6, &BuildContext::new()).unwrap();
    assert_eq!(c.exhibits.len(), 3);
    assert_eq!(c.uniform_required, Some(3));
    assert_eq!(c.two_transitive_required, 2);
    // distinct signatures separate all three even though two are not uniform
    assert!(c.not_distinguished.is_empty());
    assert!(c.exhibits.iter().all(|x| x.extended_valid));

    let c = corollary_counts(5, &BuildContext::new()).unwrap();
    let trivial = c.exhibits.iter().find(|x| x.recipe == Recipe::Trivial(31)).unwrap();
    assert!(trivial.transitivity.as_ref().unwrap().two_transitive);
}

#[test]
fn deterministic_reports() {
    let a = theorem_table(6, &BuildContext::new()).unwrap();
    let b = theorem_table(6, &BuildContext::new()).unwrap();
    let sig = |t: &hampart::app::TheoremTable| {
        t.rows
            .iter()
            .map(|r| r.measured.as_ref().map(|m| m.signature.clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(sig(&a), sig(&b));
    let p = BuildContext::new().build(&Recipe::Phelps7).unwrap();
    assert_eq!(format::serialize(&p), format::serialize(&BuildContext::new().build(&Recipe::Phelps7).unwrap()));
    assert!(verify_partition(&p, VerifyMode::Exhaustive).unwrap().modes_agree());
}
