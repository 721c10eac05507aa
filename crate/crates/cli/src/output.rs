use std::fmt::Write;

use ltoral::report::VerificationReport;

use crate::args::Format;
use crate::Record;

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = String::new();
            for r in records {
                s.push_str(&serde_json::to_string(r).expect("records serialize"));
                s.push('\n');
            }
            s
        }
        Format::Tsv => tsv(records),
    }
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

fn report_rows(out: &mut String, i: usize, r: &VerificationReport) {
    let c = clean(&r.command);
    for (k, v) in &r.integers {
        writeln!(out, "{i}\t{c}\tinteger\t{}\t{v}", clean(k)).unwrap();
    }
    for ch in &r.chains {
        for l in &ch.links {
            writeln!(
                out,
                "{i}\t{c}\tlink\t{}: {} = {}\t{}={} {}",
                clean(&ch.name),
                clean(&l.lhs_label),
                clean(&l.rhs_label),
                l.lhs,
                l.rhs,
                if l.holds { "holds" } else { "fails" }
            )
            .unwrap();
        }
    }
    for (k, v) in &r.checks {
        writeln!(out, "{i}\t{c}\tcheck\t{}\t{v}", clean(k)).unwrap();
    }
    for n in &r.notes {
        writeln!(out, "{i}\t{c}\tnote\t\t{}", clean(n)).unwrap();
    }
    if let Some(ms) = r.duration_ms {
        writeln!(out, "{i}\t{c}\tduration_ms\t\t{ms}").unwrap();
    }
    writeln!(out, "{i}\t{c}\tpass\t\t{}", r.pass).unwrap();
}

fn tsv(records: &[Record]) -> String {
    let mut out = String::from("record\tcommand\tkind\tname\tvalue\n");
    for (i, r) in records.iter().enumerate() {
        match r {
            Record::Report(r) => report_rows(&mut out, i, r),
            Record::Error(e) => writeln!(out, "{i}\t\terror\t{}\t{}", e.error, clean(&e.message)).unwrap(),
            Record::Cell(c) => {
                let status = serde_json::to_value(&c.status).expect("status serializes");
                writeln!(out, "{i}\t\tcell\t{}\t{}", c.cell, status.as_str().unwrap_or_default()).unwrap();
                if let Some(r) = &c.report {
                    report_rows(&mut out, i, r);
                }
                if let Some(e) = &c.error {
                    writeln!(out, "{i}\t\terror\t{}\t{}", e.error, clean(&e.message)).unwrap();
                }
            }
            Record::Summary { summary: s } => {
                for (k, v) in [("cells", s.cells), ("pass", s.pass), ("fail", s.fail), ("error", s.error), ("skipped", s.skipped)] {
                    writeln!(out, "{i}\t{}\tsummary\t{k}\t{v}", s.command).unwrap();
                }
            }
        }
    }
    out
}
