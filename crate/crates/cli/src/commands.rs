use crate::input::{self, err, field, Node, Parsed};
use crate::report::{ab, check, int, ints, mat, Check, Failure, Report};
use lltori::corpus;
use lltori::extgrp::FactorSet;
use lltori::fourier::{fm_round_trip, hecke_identification, random_module, regular_module, CharacterTable, FpMatrix, GroupAlgebraElement, PrimeField};
use lltori::gmod::{FiniteGroup, GammaModule};
use lltori::int::Int;
use lltori::langlands::*;
use lltori::lhs::{five_term, verify_appendix_diagram};
use lltori::tate::tate_cohomology;
use lltori::tn::{tate_nakayama_check, tn_consequences};
use lltori::zlin::IntMatrix;
use lltori::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::sync::Arc;

pub const COMMANDS: &[&str] = &[
    "cohomology",
    "tn-check",
    "lhs-verify",
    "five-term",
    "h1-weil",
    "kottwitz",
    "kottwitz-map",
    "tor-quasi-iso",
    "pairing",
    "duality-orders",
    "functoriality",
    "shapiro",
    "fourier-check",
    "hecke-tower",
    "corpus-sweep",
];

pub fn run(command: &str, doc: &Node) -> Result<Report, Failure> {
    match command {
        "cohomology" => cohomology(doc),
        "tn-check" => tn_check(doc),
        "lhs-verify" => lhs_verify(doc),
        "five-term" => five_term_cmd(doc),
        "h1-weil" => h1_weil_cmd(doc),
        "kottwitz" => kottwitz(doc),
        "kottwitz-map" => kottwitz_map_cmd(doc),
        "tor-quasi-iso" => tor(doc),
        "pairing" => pairing(doc),
        "duality-orders" => duality(doc),
        "functoriality" => functoriality(doc),
        "shapiro" => shapiro(doc),
        "fourier-check" => fourier(doc),
        "hecke-tower" => hecke(doc),
        "corpus-sweep" => sweep(doc),
        other => Err(Failure::Input(input::InputError { path: String::new(), message: format!("unknown command \"{}\"", other) })),
    }
}

fn group(doc: &Node, key: &str) -> Parsed<Arc<FiniteGroup>> {
    let at = doc.child_path(key);
    input::group(&field(doc, key, &at)?)
}

fn module(doc: &Node, key: &str, g: &Arc<FiniteGroup>) -> Parsed<GammaModule> {
    let at = doc.child_path(key);
    input::module(&field(doc, key, &at)?, g)
}

fn datum(doc: &Node) -> Parsed<FactorSet> {
    let g = group(doc, "group")?;
    let a = module(doc, "kernel", &g)?;
    let at = doc.child_path("factor_set");
    input::factor_set(&field(doc, "factor_set", &at)?, &a)
}

fn torus(doc: &Node, key: &str, g: &Arc<FiniteGroup>) -> Parsed<TorusDatum> {
    let m = module(doc, key, g)?;
    TorusDatum::new(m).or_else(|e| err(doc.child_path(key).path(), e.to_string()))
}

fn weil(doc: &Node) -> Result<(WeilDatum, TorusDatum), Failure> {
    let d = datum(doc)?;
    let t = torus(doc, "torus", d.group())?;
    Ok((WeilDatum::new(d)?, t))
}

fn modulus(doc: &Node, key: &str) -> Parsed<Int> {
    let at = doc.child_path(key);
    let n = field(doc, key, &at)?;
    let m = n.int()?;
    if m < Int::one() {
        return err(n.path(), "modulus must be positive");
    }
    Ok(m)
}

fn moduli(doc: &Node, key: &str) -> Parsed<Vec<Int>> {
    let at = doc.child_path(key);
    let n = field(doc, key, &at)?;
    let ms = if n.value.is_array() { input::ints(&n)? } else { vec![n.int()?] };
    if ms.iter().any(|m| *m < Int::one()) {
        return err(n.path(), "moduli must be positive");
    }
    Ok(ms)
}

fn optional_usize(doc: &Node, key: &str, default: usize) -> Parsed<usize> {
    let at = doc.child_path(key);
    if doc.has(key) {
        field(doc, key, &at)?.usize()
    } else {
        Ok(default)
    }
}

fn seed(doc: &Node) -> Parsed<u64> {
    let at = doc.child_path("seed");
    let n = field(doc, "seed", &at)?;
    let s = n.i64()?;
    u64::try_from(s).or_else(|_| err(n.path(), "seed must be nonnegative"))
}

fn iso(c: &IsoCheck) -> Value {
    json!({"source": ab(&c.source), "target": ab(&c.target), "injective": c.injective, "surjective": c.surjective})
}

fn iso_check(name: &str, c: &IsoCheck) -> Check {
    check(name, c.is_iso(), || format!("{} -> {}: injective {}, surjective {}", c.source, c.target, c.injective, c.surjective))
}

fn cohomology(doc: &Node) -> Result<Report, Failure> {
    let g = group(doc, "group")?;
    let m = module(doc, "module", &g)?;
    let degrees: Vec<i32> = if doc.has("degrees") {
        let at = doc.child_path("degrees");
        let n = field(doc, "degrees", &at)?;
        let ds = input::ints(&n)?;
        let mut out = Vec::new();
        for d in ds {
            match d.to_i64() {
                Some(x) if (-3..=3).contains(&x) => out.push(x as i32),
                _ => return err(n.path(), format!("degree {} is outside the window [-3, 3]", d)).map_err(Failure::from),
            }
        }
        out
    } else {
        (-3..=3).collect()
    };
    let mut r = Report::default();
    let order = Int::from(g.order());
    let mut table = Vec::new();
    for d in degrees {
        let h = tate_cohomology(&m, d)?;
        let grp = h.group().clone();
        r.push(check(format!("H^{} killed by |G|", d), grp.torsion().iter().all(|x| x.divides(&order)) && grp.is_finite(), || grp.to_string()));
        table.push(json!({"r": d, "group": ab(&grp)}));
    }
    r.set("group_order", json!(g.order()));
    r.set("tate", Value::Array(table));
    Ok(r)
}

fn tn_check(doc: &Node) -> Result<Report, Failure> {
    let d = datum(doc)?;
    let tn = tate_nakayama_check(&d)?;
    let mut r = Report::default();
    let rows: Vec<Value> = tn
        .per_subgroup
        .iter()
        .map(|e| json!({"subgroup": e.elements, "h1": ab(&e.h1), "h2": ab(&e.h2), "class_order": int(&e.class_order), "pass": e.pass()}))
        .collect();
    r.set("subgroups", Value::Array(rows));
    r.push(check("criterion", tn.holds, || {
        let e = tn.first_failure().expect("a failing subgroup");
        format!("subgroup {:?}: H^1 = {}, H^2 = {}, [Res delta] of order {}", e.elements, e.h1, e.h2, e.class_order)
    }));
    if tn.holds {
        let c = tn_consequences(&d)?;
        let rows: Vec<Value> = c.per_subgroup.iter().map(|e| json!({"subgroup": e.elements, "h3": ab(&e.h3), "h_minus1": ab(&e.h_minus1), "schur": ab(&e.schur)})).collect();
        r.set("consequences", Value::Array(rows));
        r.push(check("consequences", c.holds, || {
            let e = c.per_subgroup.iter().find(|e| !e.pass()).expect("a failing subgroup");
            format!("subgroup {:?}: H^3 = {}, H^-1 = {}, H_2(Z) = {}", e.elements, e.h3, e.h_minus1, e.schur)
        }));
    }
    Ok(r)
}

fn lhs_verify(doc: &Node) -> Result<Report, Failure> {
    let d = datum(doc)?;
    let m = module(doc, "module", d.group())?;
    let rep = verify_appendix_diagram(&d, &m)?;
    let mut r = Report::default();
    for s in &rep.squares {
        r.push(Check { name: format!("{} square", s.name), pass: s.pass, witness: s.witness.clone() });
    }
    r.push(check("five-term row exact", rep.top_exact, || "top row".into()));
    r.push(check("Tate row exact", rep.bottom_exact, || "bottom row".into()));
    r.set("right_square_flag", json!(rep.right_square_flag));
    Ok(r)
}

fn five_term_cmd(doc: &Node) -> Result<Report, Failure> {
    let d = datum(doc)?;
    let m = module(doc, "module", d.group())?;
    let ft = five_term(&d, &m)?;
    let mut r = Report::default();
    r.set("h2_gamma", ab(ft.h2_gamma.group()));
    r.set("h1_a_coinvariants", ab(&ft.h1_a));
    r.set("h1_g", ab(ft.h1_g.group()));
    r.set("h1_gamma", ab(ft.h1_gamma.group()));
    r.set("d2", ft.d2.as_ref().map_or(Value::Null, |h| mat(h.matrix())));
    if let Some(e) = ft.exact_at_h1_a {
        r.push(check("exact at H_1(A,M)_Gamma", e, || "ker incl != im d2".into()));
    }
    r.push(check("exact at H_1(G,M)", ft.exact_at_h1_g, || "ker proj != im incl".into()));
    r.push(check("onto H_1(Gamma,M)", ft.onto_h1_gamma, || "proj is not surjective".into()));
    Ok(r)
}

fn h1_weil_cmd(doc: &Node) -> Result<Report, Failure> {
    let (w, t) = weil(doc)?;
    let h = h1_weil(&w.delta, &t)?;
    let mut r = Report::default();
    r.set("h1", ab(h.group()));
    r.set("coinvariants", ab(&kottwitz_set(&t)));
    r.set("tn_holds", json!(w.tn.holds));
    if w.tn.holds {
        let c = tate_nakayama_iso_check(&w, &t)?;
        r.set("restriction", iso(&c));
        r.push(iso_check("restriction H_1(G,L) -> (L x A)^Gamma", &c));
    }
    Ok(r)
}

fn convention(doc: &Node) -> Parsed<Convention> {
    if !doc.has("convention") {
        return Ok(Convention::Tilde);
    }
    let at = doc.child_path("convention");
    let n = field(doc, "convention", &at)?;
    match n.str()? {
        "tilde" => Ok(Convention::Tilde),
        "plain" => Ok(Convention::Plain),
        other => err(n.path(), format!("unknown convention \"{}\" (tilde or plain)", other)),
    }
}

fn kottwitz(doc: &Node) -> Result<Report, Failure> {
    let (w, t) = weil(doc)?;
    let k = kottwitz_map(&w, &t, convention(doc)?)?;
    let mut r = Report::default();
    r.set("coinvariants", ab(&kottwitz_set(&t)));
    r.set("h1_alg", ab(k.alg.group()));
    r.set("tn_holds", json!(w.tn.holds));
    r.push(check("c' kills (g-1)L", k.factors, || "c' is not constant on coinvariant classes".into()));
    r.push(check("boundaries are cocycles", k.alg.boundaries_are_cocycles(), || "(0, dm) outside Z^1_alg".into()));
    Ok(r)
}

fn kottwitz_map_cmd(doc: &Node) -> Result<Report, Failure> {
    let (w, t) = weil(doc)?;
    let conv = convention(doc)?;
    let k = kottwitz_map(&w, &t, conv)?;
    let mut r = Report::default();
    r.set("convention", json!(if conv == Convention::Tilde { "tilde" } else { "plain" }));
    r.set("source", ab(k.map.source()));
    r.set("target", ab(k.map.target()));
    r.set("matrix", mat(k.map.matrix()));
    r.push(check("c' kills (g-1)L", k.factors, || "c' is not constant on coinvariant classes".into()));
    match k.certify(&w) {
        Ok(c) => r.push(iso_check("c is an isomorphism", &c)),
        Err(Error::TNFailed(msg)) => r.push(check("c is an isomorphism", false, || format!("Tate-Nakayama criterion fails: {}", msg))),
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn tor(doc: &Node) -> Result<Report, Failure> {
    let (w, t) = weil(doc)?;
    let rep = verify_tor_quasi_iso(&w, &t)?;
    let mut r = Report::default();
    r.set("checked", json!(rep.checked));
    r.set("pointwise_checked", json!(rep.pointwise_checked));
    r.set("opposite_sign_failures", json!(rep.opposite_sign_failures));
    r.set("degree_minus1", rep.degree_minus1.as_ref().map_or(Value::Null, iso));
    r.set("degree_0", rep.degree_0.as_ref().map_or(Value::Null, iso));
    r.push(check("c' d = d cores", rep.square_commutes(), || rep.failures.first().cloned().unwrap_or_default()));
    if let Some(c) = &rep.degree_minus1 {
        r.push(iso_check("degree -1", c));
    }
    if let Some(c) = &rep.degree_0 {
        r.push(iso_check("degree 0", c));
    }
    Ok(r)
}

fn pairing(doc: &Node) -> Result<Report, Failure> {
    let (w, t) = weil(doc)?;
    let m = modulus(doc, "m")?;
    let c = pairing_cocycle_check(&w, &t, &m)?;
    let mut r = Report::default();
    r.set("checked", json!(c.checked));
    r.push(check("[dt, psi] = <t, d psi>", c.pass(), || c.failures.first().cloned().unwrap_or_default()));
    match induced_pairing_table(&w, &t, &m) {
        Ok((phis, zs, table)) => {
            r.set("h1_elements", Value::Array(phis.iter().map(|v| ints(v)).collect()));
            r.set("homology_elements", Value::Array(zs.iter().map(|v| ints(v)).collect()));
            r.set("table", Value::Array(table.iter().map(|v| ints(v)).collect()));
            let d = duality_orders(&w, &t, &m)?;
            let left = table.iter().filter(|row| row.iter().all(|x| x.is_zero())).count();
            let right = (0..zs.len()).filter(|&j| table.iter().all(|row| row[j].is_zero())).count();
            let ext = d.ext.order().map_or(0, |o| o.to_usize());
            r.set("perfect", json!(table_is_perfect(&table, &phis, &zs)));
            r.set("left_kernel", json!(left));
            r.set("right_kernel", json!(right));
            r.push(check("left kernel is the Ext part", left == ext, || format!("left kernel of order {}, Ext = {}", left, d.ext)));
            r.push(check("H^1 / Ext = Hom(H_1, C_m)", phis.len() / left.max(1) == zs.len() / right.max(1), || format!("{} / {} vs {} / {}", phis.len(), left, zs.len(), right)));
        }
        Err(Error::NotFinite(_)) => r.set("table", Value::Null),
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn duality(doc: &Node) -> Result<Report, Failure> {
    let (w, t) = weil(doc)?;
    let ms = moduli(doc, "m")?;
    let mut r = Report::default();
    let mut rows = Vec::new();
    for m in &ms {
        let d = duality_orders(&w, &t, m)?;
        rows.push(json!({
            "m": int(m), "h1": ab(&d.h1), "homology": ab(&d.homology), "coinvariants": ab(&d.coinvariants),
            "ext": ab(&d.ext), "hom": ab(&d.hom), "section": d.section.is_some(),
        }));
        r.push(check(format!("m = {}: |H^1| = |Ext| |Hom|", m), d.order_identity, || format!("|{}| vs |{}| |{}|", d.h1, d.ext, d.hom)));
        r.push(check(format!("m = {}: pairing map onto Hom", m), d.surjective, || "not surjective".into()));
        r.push(check(format!("m = {}: sequence splits", m), d.section.is_some(), || "no section found".into()));
    }
    r.set("moduli", Value::Array(rows));
    Ok(r)
}

fn functoriality(doc: &Node) -> Result<Report, Failure> {
    let d = datum(doc)?;
    let g = d.group().clone();
    let s = torus(doc, "torus", &g)?;
    let t = if doc.has("torus_target") { torus(doc, "torus_target", &g)? } else { s.clone() };
    let at = doc.child_path("map");
    let map_node = field(doc, "map", &at)?;
    let map = input::matrix(&map_node)?;
    if map.rows() != t.rank() || map.cols() != s.rank() {
        return Err(err::<()>(map_node.path(), format!("expected a {}x{} matrix", t.rank(), s.rank())).unwrap_err().into());
    }
    if !s.cochar.is_equivariant(&t.cochar, &map) {
        return Err(err::<()>(map_node.path(), "map is not Gamma-equivariant").unwrap_err().into());
    }
    let m = modulus(doc, "m")?;
    let samples = optional_usize(doc, "samples", 0)?;
    let sd = if samples > 0 { seed(doc)? } else { 0 };
    let w = WeilDatum::new(d)?;
    let f = functoriality_check(&w, &s, &t, &map, &m, samples, sd)?;
    let mut r = Report::default();
    r.set("checked", json!(f.checked));
    r.push(check("f_T(phi, gx, t, g psi) = f_S(g^phi, x, g^t, psi)", f.pass(), || f.failures.first().cloned().unwrap_or_default()));
    Ok(r)
}

fn shapiro(doc: &Node) -> Result<Report, Failure> {
    let d = datum(doc)?;
    let at = doc.child_path("subgroup");
    let sub = input::subgroup(&field(doc, "subgroup", &at)?, d.group())?;
    let h = Arc::new(sub.as_group());
    let m = module(doc, "module", &h)?;
    let mm = if doc.has("m") { Some(modulus(doc, "m")?) } else { None };
    let rep = shapiro_check(&d, &sub, &m, mm.as_ref())?;
    let mut r = Report::default();
    r.set("h1_subgroup", ab(&rep.h1_sub));
    r.set("h1_induced", ab(&rep.h1_induced));
    r.push(check("H_1(G',M) = H_1(G, Ind M)", rep.homology_iso && rep.h1_sub == rep.h1_induced, || format!("{} vs {}", rep.h1_sub, rep.h1_induced)));
    if let Some((a, b, ok)) = &rep.cohomology {
        r.set("h1_subgroup_mod_m", ab(a));
        r.set("h1_induced_mod_m", ab(b));
        r.push(check("H^1(G, Ind M/m) = H^1(G', M/m)", *ok && a == b, || format!("{} vs {}", a, b)));
    }
    Ok(r)
}

fn field_for(doc: &Node, g: &FiniteGroup) -> Parsed<PrimeField> {
    if doc.has("p") {
        let at = doc.child_path("p");
        let n = field(doc, "p", &at)?;
        let p = n.i64()?;
        u64::try_from(p).ok().and_then(|p| PrimeField::new(p).ok()).map_or_else(|| err(n.path(), format!("{} is not a supported prime", p)), Ok)
    } else {
        Ok(PrimeField::smallest_with_roots(g.exponent() as u64))
    }
}

fn fp_module(n: &Node, f: &PrimeField, order: usize) -> Parsed<Vec<FpMatrix>> {
    let mats = n.array()?;
    if mats.len() != order {
        return err(n.path(), format!("{} matrices for a group of order {}", mats.len(), order));
    }
    let mut out = Vec::new();
    for (i, m) in mats.iter().enumerate() {
        let at = n.index_path(i);
        let mm = input::matrix(&at.node(m))?;
        if mm.rows() != mm.cols() {
            return err(at.path(), "action matrices must be square");
        }
        let rows: Vec<Vec<i64>> = (0..mm.rows()).map(|r| mm.row(r).iter().map(|x| x.reduce(&Int::from(f.p())).to_i64().unwrap_or(0)).collect()).collect();
        out.push(FpMatrix::from_rows(f, &rows));
    }
    Ok(out)
}

fn fourier(doc: &Node) -> Result<Report, Failure> {
    let g = group(doc, "group")?;
    let f = field_for(doc, &g)?;
    let sd = seed(doc)?;
    let pairs = optional_usize(doc, "pairs", 100)?;
    let count = optional_usize(doc, "modules", 20)?;
    let max_dim = optional_usize(doc, "max_dim", 6)?.max(1);
    let t = CharacterTable::new(&g, f)?;
    let mut r = Report::default();
    r.set("p", json!(f.p()));
    r.set("characters", Value::Array(t.table.iter().map(|row| json!(row)).collect()));
    r.push(check("character table", t.is_valid(), || "rows are not distinct homomorphisms".into()));
    r.push(check("orthogonal idempotents", t.idempotents_check(), || "e_chi e_psi != delta e_chi or sum != 1".into()));
    let mut rng = ChaCha8Rng::seed_from_u64(sd);
    let mut bad = None;
    for i in 0..pairs {
        let a = GroupAlgebraElement::random(&g, f, &mut rng);
        let b = GroupAlgebraElement::random(&g, f, &mut rng);
        let (da, db) = (t.dft(&a), t.dft(&b));
        let prod: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| f.mul(x, y)).collect();
        if t.dft(&a.mul(&b)) != prod || t.idft(&da) != a {
            bad = Some(format!("pair {}: a = {:?}, b = {:?}", i, a.coeffs, b.coeffs));
            break;
        }
    }
    r.push(check(format!("dft ring isomorphism on {} pairs", pairs), bad.is_none(), || bad.clone().unwrap_or_default()));
    let reg = fm_round_trip(&t, &regular_module(&g))?;
    r.set("regular_dims", json!(reg.dims));
    r.push(check("round trip on the regular module", reg.pass(), || format!("dims {:?}", reg.dims)));
    for i in 0..count {
        let dim = 1 + i % max_dim;
        let s = sd.wrapping_add(i as u64);
        let rep = fm_round_trip(&t, &random_module(&t, dim, s))?;
        r.push(check(format!("round trip on random module {} (dim {})", i, dim), rep.pass(), || format!("dims {:?}", rep.dims)));
    }
    if doc.has("fp_modules") {
        let at = doc.child_path("fp_modules");
        let n = field(doc, "fp_modules", &at)?;
        for (i, v) in n.array()?.iter().enumerate() {
            let at = n.index_path(i);
            let node = at.node(v);
            let action = fp_module(&node, &f, g.order())?;
            let rep = fm_round_trip(&t, &action).map_err(|e| Failure::Input(input::InputError { path: node.path().to_string(), message: e.to_string() }))?;
            r.push(check(format!("round trip on fp_modules[{}]", i), rep.pass(), || format!("dims {:?}", rep.dims)));
        }
    }
    Ok(r)
}

fn hecke(doc: &Node) -> Result<Report, Failure> {
    let at = doc.child_path("levels");
    let ln = field(doc, "levels", &at)?;
    let levels: Vec<Arc<FiniteGroup>> = ln.array()?.iter().enumerate().map(|(i, v)| input::group(&ln.index_path(i).node(v))).collect::<Parsed<_>>()?;
    if levels.len() < 2 {
        return Err(err::<()>(ln.path(), "a tower needs at least two levels").unwrap_err().into());
    }
    let at = doc.child_path("maps");
    let mn = field(doc, "maps", &at)?;
    let maps: Vec<Vec<usize>> = mn.array()?.iter().enumerate().map(|(i, v)| input::usizes(&mn.index_path(i).node(v))).collect::<Parsed<_>>()?;
    if maps.len() + 1 != levels.len() {
        return Err(err::<()>(mn.path(), format!("{} maps for {} levels", maps.len(), levels.len())).unwrap_err().into());
    }
    let f = field_for(doc, &levels[0])?;
    let mut r = Report::default();
    r.set("p", json!(f.p()));
    let mut hs = Vec::new();
    for (i, q) in maps.iter().enumerate() {
        let h = hecke_identification(&levels[i], &levels[i + 1], q, f)
            .map_err(|e| Failure::Input(input::InputError { path: mn.index_path(i).path().to_string(), message: e.to_string() }))?;
        r.push(check(format!("level {}: i(1)^2 = i(1), i injective ring map", i), h.pass(), || {
            format!("injective {}, multiplicative {}, idempotent {}, ideal {}", h.injective, h.multiplicative, h.unit_idempotent, h.image_is_ideal)
        }));
        hs.push(h);
    }
    r.set("units", Value::Array(hs.iter().map(|h| json!(h.unit().coeffs)).collect()));
    for i in 0..maps.len().saturating_sub(1) {
        let composite: Vec<usize> = maps[i].iter().map(|&x| maps[i + 1][x]).collect();
        let direct = hecke_identification(&levels[i], &levels[i + 2], &composite, f)?;
        r.push(check(format!("levels {}..{}: composition", i, i + 2), hs[i].compose(&hs[i + 1]) == direct.images, || "i_{n+1} o i_n differs from the composite".into()));
    }
    Ok(r)
}

struct Instance {
    name: String,
    failures: Vec<String>,
}

fn sweep(doc: &Node) -> Result<Report, Failure> {
    let all = ["lhs", "tn", "langlands", "functoriality", "shapiro"];
    let sections: Vec<String> = if doc.has("sections") {
        let at = doc.child_path("sections");
        let n = field(doc, "sections", &at)?;
        let mut out = Vec::new();
        for (i, v) in n.array()?.iter().enumerate() {
            let at = n.index_path(i);
            let s = at.node(v).str()?;
            if !all.contains(&s) {
                return Err(err::<()>(at.path(), format!("unknown section \"{}\"", s)).unwrap_err().into());
            }
            out.push(s.to_string());
        }
        out
    } else {
        all.iter().map(|s| s.to_string()).collect()
    };
    let ms = if doc.has("m") { moduli(doc, "m")? } else { [2, 3, 4, 8, 12].iter().map(|&m| Int::from(m as i64)).collect() };
    let samples = optional_usize(doc, "samples", 2)?;
    let sd = seed(doc)?;
    let mut r = Report::default();
    let mut instances: Vec<Instance> = Vec::new();
    let has = |s: &str| sections.iter().any(|x| x == s);
    let fail = |e: Error| vec![e.to_string()];

    if has("lhs") {
        let inst = corpus::lhs_instances()?;
        let res = lltori::par::map(&inst, |i| Instance {
            name: format!("lhs/{}", i.name),
            failures: match verify_appendix_diagram(&i.delta, &i.module) {
                Ok(rep) => rep.squares.iter().filter(|s| !s.pass).map(|s| s.name.to_string()).chain((!rep.top_exact).then(|| "five-term".into())).chain((!rep.bottom_exact).then(|| "tate row".into())).collect(),
                Err(e) => fail(e),
            },
        });
        section(&mut r, "lhs", &res);
        instances.extend(res);
    }
    let mut data = corpus::tn_weil_data()?;
    data.extend(corpus::finite_weil_data()?);
    if has("tn") {
        let mut tn_data = data.clone();
        tn_data.extend(corpus::s3_weil_data()?);
        let expected: Vec<String> = corpus::tn_weil_data()?.into_iter().map(|w| w.name).collect();
        let res = lltori::par::map(&tn_data, |w| {
            let mut failures = Vec::new();
            match tate_nakayama_check(&w.delta) {
                Ok(tn) if tn.holds => match tn_consequences(&w.delta) {
                    Ok(c) if !c.holds => failures.push("consequences".into()),
                    Err(e) => failures.push(e.to_string()),
                    _ => {}
                },
                Ok(_) if expected.contains(&w.name) => failures.push("criterion should hold".into()),
                Ok(_) => {}
                Err(e) => failures.push(e.to_string()),
            }
            Instance { name: format!("tn/{}", w.name), failures }
        });
        section(&mut r, "tn", &res);
        instances.extend(res);
    }
    if has("langlands") || has("functoriality") {
        let weils: Vec<(String, WeilDatum)> = lltori::par::map(&data, |w| WeilDatum::new(w.delta.clone()).map(|d| (w.name.clone(), d))).into_iter().collect::<Result<_, _>>()?;
        let mut jobs = Vec::new();
        for (n, w) in &weils {
            for (ln, l) in corpus::lattices(w.delta.group()) {
                jobs.push((format!("{}/{}", n, ln), w.clone(), TorusDatum::new(l)?));
            }
        }
        if has("langlands") {
            let res = lltori::par::map(&jobs, |(n, w, t)| Instance { name: format!("langlands/{}", n), failures: langlands_job(w, t, &ms).unwrap_or_else(fail) });
            section(&mut r, "langlands", &res);
            instances.extend(res);
        }
        if has("functoriality") {
            let res = lltori::par::map(&jobs, |(n, w, t)| Instance { name: format!("functoriality/{}", n), failures: functoriality_job(w, t, samples, sd).unwrap_or_else(fail) });
            section(&mut r, "functoriality", &res);
            instances.extend(res);
        }
    }
    if has("shapiro") {
        let mut cases = Vec::new();
        for (n, d, sub) in corpus::shapiro_instances()? {
            let h = Arc::new(sub.as_group());
            for (mn, m) in corpus::coefficient_modules(&h) {
                for mm in [2i64, 3] {
                    cases.push((format!("shapiro/{}/{}/m={}", n, mn, mm), d.clone(), sub.clone(), m.clone(), Int::from(mm)));
                }
            }
        }
        let res = lltori::par::map(&cases, |(n, d, sub, m, mm)| Instance {
            name: n.clone(),
            failures: match shapiro_check(d, sub, m, Some(mm)) {
                Ok(rep) if rep.pass() => Vec::new(),
                Ok(_) => vec!["shapiro".into()],
                Err(e) => fail(e),
            },
        });
        section(&mut r, "shapiro", &res);
        instances.extend(res);
    }

    let mut rows: Vec<(String, &Instance)> = instances.iter().map(|i| (hex::encode(&Sha256::digest(i.name.as_bytes())[..8]), i)).collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.name.cmp(&b.1.name)));
    r.set("instance_count", json!(rows.len()));
    r.set(
        "instances",
        Value::Array(rows.iter().map(|(d, i)| json!({"digest": d, "name": i.name, "pass": i.failures.is_empty(), "failures": i.failures})).collect()),
    );
    Ok(r)
}

fn section(r: &mut Report, name: &str, res: &[Instance]) {
    let bad: Vec<&Instance> = res.iter().filter(|i| !i.failures.is_empty()).collect();
    r.push(check(format!("{}: {} instances", name, res.len()), bad.is_empty(), || format!("{} failing, first {} ({})", bad.len(), bad[0].name, bad[0].failures.join(", "))));
}

fn langlands_job(w: &WeilDatum, t: &TorusDatum, ms: &[Int]) -> Result<Vec<String>, Error> {
    let mut f = Vec::new();
    if w.tn.holds {
        if !tate_nakayama_iso_check(w, t)?.is_iso() {
            f.push("restriction iso".to_string());
        }
        let k = kottwitz_map(w, t, Convention::Tilde)?;
        if !(k.factors && k.certify(w)?.is_iso()) {
            f.push("kottwitz iso".into());
        }
    }
    if w.presentation.extension().is_finite() || w.tn.holds {
        let tor = verify_tor_quasi_iso(w, t)?;
        if !tor.pass() {
            f.push("tor".into());
        }
    }
    for m in ms {
        if !duality_orders(w, t, m)?.pass() {
            f.push(format!("duality m={}", m));
        }
        if !pairing_cocycle_check(w, t, m)?.pass() {
            f.push(format!("pairing cocycle m={}", m));
        }
    }
    Ok(f)
}

fn functoriality_job(w: &WeilDatum, t: &TorusDatum, samples: usize, seed: u64) -> Result<Vec<String>, Error> {
    let k = t.rank();
    let mut f = Vec::new();
    for (name, g) in [("id", IntMatrix::identity(k)), ("zero", IntMatrix::zeros(k, k)), ("x2", IntMatrix::identity(k).scale(&Int::from(2i64)))] {
        for m in [2i64, 4] {
            if !functoriality_check(w, t, t, &g, &Int::from(m), samples, seed)?.pass() {
                f.push(format!("{} m={}", name, m));
            }
        }
    }
    Ok(f)
}
