use std::fmt::Write as _;

use clk_core::Complex64;

/// Left-aligned plain-text table with a dashed rule under the header.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let mut parts = Vec::new();
        for (cell, w) in cells.zip(&widths) {
            parts.push(format!("{cell}{}", " ".repeat(w - cell.chars().count())));
        }
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &mut header.iter().copied());
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    let _ = writeln!(out, "{}", rule.join("  "));
    for row in rows {
        line(&mut out, &mut row.iter().map(String::as_str));
    }
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv output is utf-8")
}

pub fn complex(z: Complex64) -> String {
    let re = if z.re.abs() < 1e-12 { 0.0 } else { z.re };
    if z.im.abs() < 1e-12 {
        return format!("{re:.6}");
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{re:.6}{sign}{:.6}i", z.im.abs())
}

pub fn complex_list(zs: &[Complex64]) -> String {
    zs.iter().map(|&z| complex(z)).collect::<Vec<_>>().join(" ")
}
