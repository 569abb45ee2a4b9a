//! Output rendering: human tables and the CSV/JSON compatibility surfaces.

use aglq_core::agl_mobius::MuTable;
use aglq_core::designs::DesignReport;
use aglq_core::{Field, GroupCatalog, Subgroup};

/// Compact human-readable triple, e.g. "S(d=3, b=g^1, H=[g^0,g^5])".
pub fn subgroup_text(field: &Field, s: &Subgroup) -> String {
    let basis: Vec<String> = s
        .h()
        .basis()
        .iter()
        .map(|&b| field.format_element(b))
        .collect();
    format!(
        "S(d={}, b={}, H=[{}])",
        s.d(),
        field.format_element(s.b_rep()),
        basis.join(",")
    )
}

fn basis_cell(field: &Field, s: &Subgroup) -> String {
    let rows: Vec<String> = s
        .h()
        .basis()
        .iter()
        .map(|&b| {
            let coeffs: Vec<String> = field.coeffs(b).iter().map(u64::to_string).collect();
            format!("[{}]", coeffs.join(","))
        })
        .collect();
    rows.join(";")
}

pub fn subgroups_human(catalog: &GroupCatalog) -> String {
    let field = catalog.field();
    let mut out = format!(
        "q = {}  subgroups = {}  group order = {}\n",
        field.q(),
        catalog.len(),
        field.q() * (field.q() - 1)
    );
    out.push_str("index  order  d  b      dim_H  triple\n");
    for (i, s) in catalog.iter().enumerate() {
        out.push_str(&format!(
            "{:<6} {:<6} {:<2} {:<6} {:<6} {}\n",
            i,
            s.order(field),
            s.d(),
            field.format_element(s.b_rep()),
            s.h().dim_p(),
            subgroup_text(field, s)
        ));
    }
    out
}

pub fn subgroups_csv(catalog: &GroupCatalog) -> String {
    let field = catalog.field();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "order", "d", "b", "dim_h", "h_basis"])
        .expect("csv record");
    for (i, s) in catalog.iter().enumerate() {
        w.write_record([
            i.to_string(),
            s.order(field).to_string(),
            s.d().to_string(),
            field.format_element(s.b_rep()),
            s.h().dim_p().to_string(),
            basis_cell(field, s),
        ])
        .expect("csv record");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
}

pub fn table_human(catalog: &GroupCatalog, table: &MuTable) -> String {
    let mut out = format!(
        "q = {}  subgroups = {}  comparable pairs = {}\n",
        table.q(),
        catalog.len(),
        table.len()
    );
    out.push_str("i      j      mu\n");
    for (&(i, j), v) in table.pairs() {
        out.push_str(&format!("{:<6} {:<6} {}\n", i, j, v));
    }
    out
}

pub fn table_csv(catalog: &GroupCatalog, table: &MuTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "j", "d1", "d2", "dim_h1", "dim_h2", "mu"])
        .expect("csv record");
    for (&(i, j), v) in table.pairs() {
        let (s1, s2) = (catalog.get(i), catalog.get(j));
        w.write_record([
            i.to_string(),
            j.to_string(),
            s1.d().to_string(),
            s2.d().to_string(),
            s1.h().dim_p().to_string(),
            s2.h().dim_p().to_string(),
            v.to_string(),
        ])
        .expect("csv record");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
}

pub fn designs_human(report: &DesignReport) -> String {
    let mut out = format!(
        "q = {}  t = {}  v = {}  k = {}..={}\n",
        report.q, report.t, report.v, report.k_min, report.k_max
    );
    out.push_str("index  order  k   f_k          g_k          lambda   integral  realizable\n");
    for r in &report.rows {
        let (lambda, integral) = match &r.lambda {
            Some(l) => (l.value.to_string(), l.integral.to_string()),
            None => ("-".to_string(), "-".to_string()),
        };
        out.push_str(&format!(
            "{:<6} {:<6} {:<3} {:<12} {:<12} {:<8} {:<9} {}\n",
            r.subgroup_index, r.order, r.k, r.f_k, r.g_k, lambda, integral, r.realizable
        ));
    }
    out
}

pub fn designs_csv(report: &DesignReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "subgroup_index",
        "order",
        "k",
        "f_k",
        "g_k",
        "lambda_num",
        "lambda_den",
        "integral",
    ])
    .expect("csv record");
    for r in &report.rows {
        let (num, den, integral) = match &r.lambda {
            Some(l) => (
                l.value.numer().to_string(),
                l.value.denom().to_string(),
                l.integral.to_string(),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        w.write_record([
            r.subgroup_index.to_string(),
            r.order.to_string(),
            r.k.to_string(),
            r.f_k.to_string(),
            r.g_k.to_string(),
            num,
            den,
            integral,
        ])
        .expect("csv record");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
}
