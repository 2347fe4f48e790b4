//! Plain-text rendering: cycles, Lê numbers, invariants, classification,
//! candidates, cases.

use std::fmt::Write;

use crate::report::Report;

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "unknown".into(), T::to_string)
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(w, "f = {}", r.problem.f);
    let _ = writeln!(w, "coordinates ({}), z0 = {}, profile {}", r.problem.coordinates.join(", "), r.problem.z0, r.problem.profile);

    let _ = writeln!(w, "\n== cycles ==");
    for c in &r.cycles.polar {
        let _ = writeln!(w, "Γ^{} = {}", c.index, c.cycle);
    }
    for c in &r.cycles.le {
        let _ = writeln!(w, "Λ^{} = {}", c.index, c.cycle);
    }
    let _ = writeln!(w, "dim Σf = {}", opt(&r.cycles.sigma_dim));

    let _ = writeln!(w, "\n== Lê numbers ==");
    let le: Vec<String> = r.le_numbers.iter().enumerate().map(|(k, v)| format!("λ^{} = {}", k, v)).collect();
    let _ = writeln!(w, "{}", if le.is_empty() { "unavailable".into() } else { le.join(", ") });

    let _ = writeln!(w, "\n== invariants ==");
    let i = &r.invariants;
    let _ = writeln!(w, "γ¹ = {}, λ⁰ = {}, τ = {}, gcd(γ¹, τ) = {}", i.gamma1, i.lambda0, i.tau, i.gcd_gamma1_tau);
    for c in &i.components {
        let conj = if c.conjugates > 1 { format!(" ×{} conjugates", c.conjugates) } else { String::new() };
        let _ = writeln!(w, "  {}{}: m = {}, n = {}, polar contact = {}", c.name, conj, c.m, c.n, c.polar);
    }

    let _ = writeln!(w, "\n== classification ==");
    for c in &r.classification.components {
        let mut flags = Vec::new();
        if c.relatively_prime {
            flags.push("relatively prime".to_string());
        }
        if c.unitary {
            flags.push("unitary".into());
        }
        if let Some(p) = c.prime_of_order {
            flags.push(format!("prime({})", p));
        }
        let _ = writeln!(w, "  {}: (m, n) = ({}, {}), (p, q) = ({}, {}), β = {} in {} [{}]", c.name, c.m, c.n, c.p, c.q, c.beta, c.field, flags.join(", "));
    }
    let _ = writeln!(w, "carrousel form: {}; semi-simple: {}", r.classification.carrousel_form, r.classification.semi_simple);
    if !r.classification.reasons.is_empty() {
        let _ = writeln!(w, "  ({})", r.classification.reasons.join("; "));
    }

    let _ = writeln!(w, "\n== candidates ==");
    let inp = &r.inputs;
    let _ = writeln!(w, "inputs: n = {}, b̃_(n-1)(f₀) = {}, χ(link) = {}, observed trace = {}, b̃_n = {}", inp.n, opt(&inp.b_slice), opt(&inp.chi_link), opt(&inp.observed_trace), opt(&inp.bn));
    for (k, v) in &inp.provenance {
        let _ = writeln!(w, "  {} from {}", k, v);
    }
    let c = &r.candidates;
    let _ = writeln!(w, "char_rel ∈ {{{}}}", c.char_rel.join(", "));
    if !c.slice_chars.is_empty() {
        let _ = writeln!(w, "slice char ∈ {{{}}}", c.slice_chars.join(", "));
    }
    let _ = writeln!(w, "rank im ∂ ∈ [{}, {}], b̃_n ∈ [{}, {}]", c.rank_im.0, c.rank_im.1, c.rank_bn.0, c.rank_bn.1);

    if let Some(cs) = &r.cases {
        let _ = writeln!(w, "\n== cases (prime {}) ==", cs.prime);
        let _ = writeln!(w, "admissible: {}", if cs.admissible.is_empty() { "none".into() } else { cs.admissible.join(", ") });
        for rc in &cs.removed {
            let detail = if rc.detail.is_empty() { String::new() } else { format!(" ({})", rc.detail) };
            let _ = writeln!(w, "  {} removed by {}{}", rc.case, rc.filter, detail);
        }
    }

    let _ = writeln!(w, "\n== options ==");
    for (k, o) in r.options.iter().enumerate() {
        let _ = writeln!(w, "{}) rank im = {}, b̃_(n-1) = {}, b̃_n = {}", k + 1, o.rank_im, opt(&o.b_n_minus_1), o.b_n);
        if let (Some(rel), Some(im)) = (&o.char_rel, &o.char_im) {
            let _ = writeln!(w, "   char_rel = {}, char_im = {}", rel, im);
        }
        if let Some(x) = &o.char_n_minus_1 {
            let _ = writeln!(w, "   char_(n-1) = {}", x);
        }
        if let Some(x) = &o.char_n {
            let tag = if o.char_n_polynomial == Some(false) { " (not a polynomial)" } else { "" };
            let _ = writeln!(w, "   char_n = {}{}", x, tag);
        }
        if !o.cases.is_empty() {
            let _ = writeln!(w, "   {}", o.cases.join(", "));
        }
        for x in o.consequences.iter().chain(&o.notes) {
            let _ = writeln!(w, "   - {}", x);
        }
    }

    let _ = writeln!(w, "\n== checks ==");
    for c in &r.checks {
        let _ = writeln!(w, "[{}] {}: {}", if c.holds { "ok" } else { "FAIL" }, c.rule, c.statement);
    }
    if !r.audit.is_empty() {
        let _ = writeln!(w, "\n== audit ==");
        for a in &r.audit {
            let _ = writeln!(w, "{}/{}: {} — {}", a.module, a.filter, a.candidate, a.reason);
        }
    }
    for n in &r.notes {
        let _ = writeln!(w, "note: {}", n);
    }
    for x in &r.warnings {
        let _ = writeln!(w, "warning: {}", x);
    }
    s
}
