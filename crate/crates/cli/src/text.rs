//! Human-readable rendering for `--format text`.

use std::fmt::Write;

use mcvlie::analysis::{CompositionReport, IsoResult, RhReport, StarReport};
use mcvlie::arrangement::Arrangement;
use mcvlie::exact::{format_rational, ExactMatrix};
use mcvlie::holonomy::{IntegrabilityReport, PfaffianSystem, Presentation};

fn indent(m: &ExactMatrix) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

pub fn arrangement(a: &Arrangement) -> String {
    let mut out = format!("arrangement in dimension {}, {} hyperplane(s)\n", a.dim(), a.len());
    for h in a.hyperplanes() {
        let _ = writeln!(out, "  {}: {}", h.id(), h.equation());
    }
    out
}

pub fn integrability(r: &IntegrabilityReport) -> String {
    if r.is_ok() {
        return "integrable".into();
    }
    let mut out = format!("not integrable: {} violation(s)\n", r.violations.len());
    for v in &r.violations {
        let _ = writeln!(out, "[{}, {}] != 0:", v.family[v.member], v.family.join(" + "));
        out += &indent(&v.commutator);
    }
    out
}

pub fn presentation(p: &Presentation) -> String {
    let mut out = format!("generators: {}\n", p.generators.join(", "));
    for fam in &p.relation_families {
        let sum = fam.join(" + ");
        for h in &fam[..fam.len() - 1] {
            let _ = writeln!(out, "[{h}, {sum}] = 0");
        }
    }
    out
}

pub fn tuple(mats: &[ExactMatrix]) -> String {
    let mut out = String::new();
    for (i, m) in mats.iter().enumerate() {
        let _ = writeln!(out, "matrix {}:", i + 1);
        out += &indent(m);
    }
    out
}

pub fn system(s: &PfaffianSystem, order: &[String]) -> String {
    let mut out = format!("rank {}, block order: {}\n", s.rank(), order.join(", "));
    for (id, m) in s.residues() {
        let _ = writeln!(out, "{id}:");
        out += &indent(m);
    }
    out
}

fn star_lines(r: &StarReport) -> String {
    let mut out = format!("(*): {}\n(**): {}\n", r.holds_star, r.holds_dstar);
    for d in &r.defects {
        let _ = writeln!(out, "  generator {}: (*) defect {}, (**) defect {}", d.generator, d.star, d.dstar);
    }
    for (name, w) in [("(*)", &r.star_witness), ("(**)", &r.dstar_witness)] {
        if let Some(w) = w {
            let v: Vec<String> = w.vector.iter().map(format_rational).collect();
            let _ = writeln!(
                out,
                "  {name} fails for generator {} at c = {}: [{}]",
                w.generator,
                format_rational(&w.c),
                v.join(", ")
            );
        }
    }
    out
}

pub fn analysis(star: &StarReport, irreducible: bool, iso: Option<&IsoResult>) -> String {
    let mut out = star_lines(star);
    let _ = writeln!(out, "irreducible: {irreducible}");
    if let Some(r) = iso {
        let _ = writeln!(out, "isomorphism: {}", r.verdict.as_str());
        if let Some(x) = &r.intertwiner {
            out += &indent(x);
        }
    }
    out
}

pub fn composition(r: &CompositionReport) -> String {
    match &r.result {
        None => format!("not applicable\n{}", star_lines(&r.star)),
        Some(res) => {
            let [a, b, c] = res.dims;
            let mut out = format!("isomorphic: {}, dims {a}/{b}/{c}\n", res.isomorphic);
            if let Some((_, ok)) = &res.identity_witness {
                let _ = writeln!(out, "identity: {ok}");
            }
            out
        }
    }
}

pub fn rh(r: &RhReport) -> String {
    if r.pass {
        return "pass".into();
    }
    let mut out = String::from("fail\n");
    for o in &r.offenders {
        let _ = writeln!(out, "  {}: eigenvalue {}", o.source, o.eigenvalue);
    }
    out
}
