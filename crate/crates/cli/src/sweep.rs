//! `sweep`: verdict tables over whole parameter families, with the
//! closed-form criterion recomputed per row and a match column.
//!
//! Supported patterns (ranges optional, defaults shown):
//!
//! ```text
//! sl_over_product:C  n=2..8      tempered iff 2*n1 <= n+1
//! so_over_product:C  n=3..8      tempered iff 2*n1 <= n+2
//! sp_over_product:C  n=2..6      tempered iff r >= 3 and 2*n1 <= n
//! so_pq_over_product p+q<=7      tempered iff 2*max(p_i+q_i | p_i q_i != 0) <= p+q+2
//! sl_over_product:R  m+n<=8      two blocks, tempered iff |m-n| <= 1
//! sl_over_sp:C       m=1..4      never tempered
//! sl_over_sp:R       m=1..4      never tempered
//! sl_over_so_pq:C    n=2..8      always tempered
//! sl_over_so_pq:R    p+q<=8      always tempered
//! group_manifold                 always tempered, p = 2
//! complexification               always tempered, p = 2
//! ```
//!
//! CSV header is frozen: `params,p_exact,tempered,expected,match`.

use serde::Serialize;
use tempered::catalog::{
    build_pair, partitions, so_block_lists, BaseAlgebra, FamilySpec, Field,
};
use tempered::criterion::analyze;
use tempered::{Error, Result};

#[derive(Serialize)]
pub struct Row {
    pub params: String,
    pub p_exact: String,
    pub tempered: bool,
    pub expected: bool,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub enum Output {
    Human,
    Csv,
    Json,
}

enum Pattern {
    SlProductC { lo: usize, hi: usize },
    SoProductC { lo: usize, hi: usize },
    SpProductC { lo: usize, hi: usize },
    SoPqProduct { max_total: usize },
    SlProductR { max_total: usize },
    SlOverSp { field: Field },
    SlOverSoC { lo: usize, hi: usize },
    SlOverSoPq { max_total: usize },
    GroupManifold,
    Complexification,
}

fn bad_pattern(msg: impl Into<String>) -> Error {
    Error::InvalidFamily(msg.into())
}

/// "n=2..8" or "m=1..4".
fn parse_range(s: &str, default: (usize, usize)) -> Result<(usize, usize)> {
    let Some(s) = s.split_once('=').map(|(_, r)| r) else {
        return Err(bad_pattern(format!("expected KEY=LO..HI, got {s:?}")));
    };
    let Some((lo, hi)) = s.split_once("..") else {
        return Err(bad_pattern(format!("expected LO..HI, got {s:?}")));
    };
    let lo: usize = lo.parse().map_err(|_| bad_pattern(format!("bad bound {lo:?}")))?;
    let hi: usize = hi.parse().map_err(|_| bad_pattern(format!("bad bound {hi:?}")))?;
    if lo > hi || hi > default.1.max(16) {
        return Err(bad_pattern(format!("range {lo}..{hi} out of order or too large")));
    }
    Ok((lo, hi))
}

/// "p+q<=7" or "m+n<=8".
fn parse_budget(s: &str, cap: usize) -> Result<usize> {
    let Some((_, n)) = s.split_once("<=") else {
        return Err(bad_pattern(format!("expected SUM<=N, got {s:?}")));
    };
    let n: usize = n.parse().map_err(|_| bad_pattern(format!("bad bound {n:?}")))?;
    if n > cap {
        return Err(bad_pattern(format!("budget {n} exceeds the sweep cap {cap}")));
    }
    Ok(n)
}

fn parse_pattern(args: &[String]) -> Result<Pattern> {
    let family = args
        .first()
        .ok_or_else(|| bad_pattern("missing family pattern"))?
        .as_str();
    let range = args.get(1).map(String::as_str);
    let extra = |pat: Pattern| {
        if args.len() > 2 {
            Err(bad_pattern(format!("unexpected argument {:?}", args[2])))
        } else {
            Ok(pat)
        }
    };
    match family {
        "sl_over_product:C" => {
            let (lo, hi) = parse_range(range.unwrap_or("n=2..8"), (2, 8))?;
            extra(Pattern::SlProductC { lo, hi })
        }
        "so_over_product:C" => {
            let (lo, hi) = parse_range(range.unwrap_or("n=3..8"), (3, 8))?;
            extra(Pattern::SoProductC { lo, hi })
        }
        "sp_over_product:C" => {
            let (lo, hi) = parse_range(range.unwrap_or("n=2..6"), (2, 6))?;
            extra(Pattern::SpProductC { lo, hi })
        }
        "so_pq_over_product" | "so_over_product:R" => {
            let max_total = parse_budget(range.unwrap_or("p+q<=7"), 9)?;
            extra(Pattern::SoPqProduct { max_total })
        }
        "sl_over_product:R" => {
            let max_total = parse_budget(range.unwrap_or("m+n<=8"), 10)?;
            extra(Pattern::SlProductR { max_total })
        }
        "sl_over_sp:C" => extra(Pattern::SlOverSp { field: Field::C }),
        "sl_over_sp:R" => extra(Pattern::SlOverSp { field: Field::R }),
        "sl_over_so_pq:C" => {
            let (lo, hi) = parse_range(range.unwrap_or("n=2..8"), (2, 8))?;
            extra(Pattern::SlOverSoC { lo, hi })
        }
        "sl_over_so_pq:R" => {
            let max_total = parse_budget(range.unwrap_or("p+q<=8"), 10)?;
            extra(Pattern::SlOverSoPq { max_total })
        }
        "group_manifold" => extra(Pattern::GroupManifold),
        "complexification" => extra(Pattern::Complexification),
        other => Err(bad_pattern(format!("unsupported sweep family {other:?}"))),
    }
}

/// Each instance paired with the closed-form verdict for its row.
fn instances(pattern: &Pattern) -> Vec<(FamilySpec, bool)> {
    let mut out = Vec::new();
    match pattern {
        Pattern::SlProductC { lo, hi } => {
            for n in *lo..=*hi {
                for parts in partitions(n, 2) {
                    let expected = 2 * parts[0] <= n + 1;
                    out.push((
                        FamilySpec::SlProduct {
                            field: Field::C,
                            parts,
                            with_center: false,
                        },
                        expected,
                    ));
                }
            }
        }
        Pattern::SoProductC { lo, hi } => {
            for n in *lo..=*hi {
                for parts in partitions(n, 1) {
                    let expected = 2 * parts[0] <= n + 2;
                    out.push((FamilySpec::SoProductC { n, parts }, expected));
                }
            }
        }
        Pattern::SpProductC { lo, hi } => {
            for n in *lo..=*hi {
                for parts in partitions(n, 1) {
                    let expected = parts.len() >= 3 && 2 * parts[0] <= n;
                    out.push((
                        FamilySpec::SpProduct {
                            field: Field::C,
                            n,
                            parts,
                        },
                        expected,
                    ));
                }
            }
        }
        Pattern::SoPqProduct { max_total } => {
            for total in 3..=*max_total {
                for q in 1..=total / 2 {
                    let p = total - q;
                    for blocks in so_block_lists(p, q) {
                        let mixed_max = blocks
                            .iter()
                            .filter(|(bp, bq)| *bp > 0 && *bq > 0)
                            .map(|(bp, bq)| bp + bq)
                            .max();
                        let expected = mixed_max.is_none_or(|m| 2 * m <= p + q + 2);
                        out.push((FamilySpec::SoProductR { p, q, blocks }, expected));
                    }
                }
            }
        }
        Pattern::SlProductR { max_total } => {
            for total in 2..=*max_total {
                for m in 1..=total / 2 {
                    let parts = vec![total - m, m];
                    let expected = (total - m) - m <= 1;
                    out.push((
                        FamilySpec::SlProduct {
                            field: Field::R,
                            parts,
                            with_center: false,
                        },
                        expected,
                    ));
                }
            }
        }
        Pattern::SlOverSp { field } => {
            for m in 1..=4 {
                out.push((FamilySpec::SlOverSp { field: *field, m }, false));
            }
        }
        Pattern::SlOverSoC { lo, hi } => {
            for n in *lo..=*hi {
                out.push((FamilySpec::SlOverSoC { n }, true));
            }
        }
        Pattern::SlOverSoPq { max_total } => {
            for total in 2..=*max_total {
                for q in 1..=total / 2 {
                    out.push((FamilySpec::SlOverSoPq { p: total - q, q }, true));
                }
            }
        }
        Pattern::GroupManifold => {
            for base in BaseAlgebra::shipped() {
                out.push((FamilySpec::GroupManifold { base }, true));
            }
        }
        Pattern::Complexification => {
            for base in BaseAlgebra::shipped() {
                out.push((FamilySpec::Complexification { base }, true));
            }
        }
    }
    out
}

pub fn table(args: &[String], max_rank: Option<usize>) -> Result<Vec<Row>> {
    let pattern = parse_pattern(args)?;
    let mut rows = Vec::new();
    for (spec, expected) in instances(&pattern) {
        let pair = build_pair(&spec)?;
        if max_rank.is_some_and(|cap| pair.dim_a() > cap) {
            continue;
        }
        let report = analyze(&pair)?;
        rows.push(Row {
            params: spec.canonical_ref(),
            p_exact: report.p.display(),
            tempered: report.tempered,
            expected,
            matches: report.tempered == expected,
        });
    }
    Ok(rows)
}

pub fn render(rows: &[Row], output: &Output) -> Result<()> {
    match output {
        Output::Csv => {
            println!("params,p_exact,tempered,expected,match");
            for r in rows {
                println!(
                    "{},{},{},{},{}",
                    r.params, r.p_exact, r.tempered, r.expected, r.matches
                );
            }
        }
        Output::Json => {
            let text = serde_json::to_string_pretty(rows)
                .map_err(|e| Error::Internal(format!("sweep serialization failed: {e}")))?;
            println!("{text}");
        }
        Output::Human => {
            let width = rows.iter().map(|r| r.params.len()).max().unwrap_or(6).max(6);
            println!(
                "{:<width$}  {:>8}  {:>8}  {:>8}  {:>5}",
                "params", "p_exact", "tempered", "expected", "match"
            );
            for r in rows {
                println!(
                    "{:<width$}  {:>8}  {:>8}  {:>8}  {:>5}",
                    r.params, r.p_exact, r.tempered, r.expected, r.matches
                );
            }
            let mismatches = rows.iter().filter(|r| !r.matches).count();
            println!("rows: {}, mismatches: {mismatches}", rows.len());
        }
    }
    Ok(())
}
