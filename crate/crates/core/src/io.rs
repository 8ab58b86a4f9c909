//! Canonical JSON files.
//!
//! Every file is an envelope `{"kind": .., "version": 1, "data": ..}`.
//! Morphisms are referenced by name, and table keys join names with `,`
//! (and `|` for `χ`). Objects are emitted with sorted keys, so the same
//! value always serializes to the same bytes.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::cohomology::{ClassificationResult, Coboundary, CocycleTriple, PreTrack, TrackChoice};
use crate::fincat::{FiniteCategory, Mor, MorphismInfo, QuotientFunctor};
use crate::fingroup::{Elem, FiniteGroup, GroupHom};
use crate::natsys::NaturalSystem;
use crate::track::{PiGTrack, TrackCategory};
use crate::Error;

pub const VERSION: u64 = 1;

/// The structure kinds carried by the envelope.
pub const KINDS: &[&str] = &[
    "group",
    "category",
    "natural_system",
    "pretrack",
    "track_category",
    "pi_g_track",
    "cocycle",
    "coboundary",
    "classification",
];

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Wraps `data` in the envelope and renders it canonically.
pub fn render(kind: &str, data: Value) -> String {
    let doc = json!({ "kind": kind, "version": VERSION, "data": data });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Splits an envelope into its kind and data.
pub fn parse_envelope(text: &str) -> Result<(String, Value), Error> {
    let mut doc: Value = serde_json::from_str(text)?;
    let obj = doc.as_object_mut().ok_or_else(|| parse_err("document is not a JSON object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("missing string field \"kind\""))?
        .to_string();
    if !KINDS.contains(&kind.as_str()) {
        return Err(parse_err(format!("unknown kind {kind:?}")));
    }
    match obj.get("version").and_then(Value::as_u64) {
        Some(VERSION) => {}
        _ => return Err(parse_err(format!("unsupported or missing version (expected {VERSION})"))),
    }
    let data = obj.remove("data").ok_or_else(|| parse_err("missing field \"data\""))?;
    Ok((kind, data))
}

/// Parses an envelope and checks its kind.
pub fn parse_kind(text: &str, kind: &str) -> Result<Value, Error> {
    let (found, data) = parse_envelope(text)?;
    if found != kind {
        return Err(parse_err(format!("expected kind {kind:?}, found {found:?}")));
    }
    Ok(data)
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, Error> {
    v.get(name).ok_or_else(|| parse_err(format!("missing field {name:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, Error> {
    v.as_object().ok_or_else(|| parse_err(format!("{what} must be an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, Error> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn index(v: &Value, what: &str) -> Result<usize, Error> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str, Error> {
    v.as_str().ok_or_else(|| parse_err(format!("{what} must be a string")))
}

fn indices(v: &Value, what: &str) -> Result<Vec<usize>, Error> {
    array(v, what)?.iter().map(|x| index(x, what)).collect()
}

fn table_json(t: &[usize]) -> Value {
    Value::from(t.to_vec())
}

// ---- groups ----

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "add": g.add_table(), "neg": g.neg_table() })
}

pub fn group_from_json(v: &Value) -> Result<FiniteGroup, Error> {
    let order = index(field(v, "order")?, "order")?;
    let add = array(field(v, "add")?, "add")?
        .iter()
        .map(|row| indices(row, "add row"))
        .collect::<Result<Vec<_>, _>>()?;
    let neg = indices(field(v, "neg")?, "neg")?;
    if neg.len() != order {
        return Err(Error::Structural(format!("order {order} but {} negatives", neg.len())));
    }
    FiniteGroup::from_tables(add, neg)
}

// ---- categories ----

fn check_name(name: &str) -> Result<(), Error> {
    if name.is_empty() || name.contains([',', '|']) {
        return Err(Error::Structural(format!("name {name:?} is empty or contains ',' or '|'")));
    }
    Ok(())
}

pub fn category_to_json(c: &FiniteCategory) -> Value {
    let morphisms: Vec<Value> = c
        .morphisms()
        .map(|f| {
            let i = c.info(f);
            json!({ "id": i.name, "src": c.object_name(i.src), "tgt": c.object_name(i.tgt) })
        })
        .collect();
    let identities: Map<String, Value> = (0..c.num_objects())
        .map(|o| (c.object_name(o).to_string(), Value::from(c.name(c.id(o)))))
        .collect();
    let compose: Map<String, Value> = c
        .composable_pairs()
        .into_iter()
        .map(|(g, f)| (format!("{},{}", c.name(g), c.name(f)), Value::from(c.name(c.comp(g, f)))))
        .collect();
    json!({
        "objects": c.object_names(),
        "morphisms": morphisms,
        "identities": identities,
        "compose": compose,
    })
}

pub fn category_from_json(v: &Value) -> Result<FiniteCategory, Error> {
    let objects: Vec<String> = array(field(v, "objects")?, "objects")?
        .iter()
        .map(|o| string(o, "object").map(str::to_string))
        .collect::<Result<_, _>>()?;
    for o in &objects {
        check_name(o)?;
    }
    let obj = |name: &str| {
        objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::Structural(format!("unknown object {name:?}")))
    };
    let mut morphisms = Vec::new();
    for m in array(field(v, "morphisms")?, "morphisms")? {
        let name = string(field(m, "id")?, "morphism id")?;
        check_name(name)?;
        morphisms.push(MorphismInfo {
            name: name.to_string(),
            src: obj(string(field(m, "src")?, "src")?)?,
            tgt: obj(string(field(m, "tgt")?, "tgt")?)?,
        });
    }
    let mor = |name: &str| {
        morphisms
            .iter()
            .position(|m| m.name == name)
            .ok_or_else(|| Error::Structural(format!("unknown morphism {name:?}")))
    };
    let ids = object(field(v, "identities")?, "identities")?;
    if ids.len() != objects.len() {
        return Err(Error::Structural("one identity per object required".into()));
    }
    let identity = objects
        .iter()
        .map(|o| {
            let m = ids
                .get(o)
                .ok_or_else(|| Error::Structural(format!("no identity for object {o:?}")))?;
            mor(string(m, "identity")?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut compose = Vec::new();
    for (key, gf) in object(field(v, "compose")?, "compose")? {
        let parts: Vec<&str> = key.split(',').collect();
        let [g, f] = parts[..] else {
            return Err(parse_err(format!("composition key {key:?} is not \"g,f\"")));
        };
        compose.push(((mor(g)?, mor(f)?), mor(string(gf, "composite")?)?));
    }
    let c = FiniteCategory::new(objects, morphisms, identity, compose)?;
    Ok(c)
}

/// Resolves `,`-joined morphism names.
fn key_ids<const N: usize>(c: &FiniteCategory, key: &str, sep: &[char]) -> Result<[Mor; N], Error> {
    let parts: Vec<&str> = key.split(sep).collect();
    if parts.len() != N {
        return Err(parse_err(format!("key {key:?} must name {N} morphisms")));
    }
    let mut out = [0; N];
    for (slot, name) in out.iter_mut().zip(parts) {
        *slot = c
            .morphism_by_name(name)
            .ok_or_else(|| Error::Structural(format!("unknown morphism {name:?} in key {key:?}")))?;
    }
    Ok(out)
}

fn key_name(c: &FiniteCategory, ids: &[Mor]) -> String {
    ids.iter().map(|&m| c.name(m)).collect::<Vec<_>>().join(",")
}

fn chi_key_name(c: &FiniteCategory, (f, g, x, y): (Mor, Mor, Mor, Mor)) -> String {
    format!("{},{}|{},{}", c.name(f), c.name(g), c.name(x), c.name(y))
}

fn parse_chi_key(c: &FiniteCategory, key: &str) -> Result<(Mor, Mor, Mor, Mor), Error> {
    let (left, right) = key
        .split_once('|')
        .ok_or_else(|| parse_err(format!("χ key {key:?} is not \"f,g|x,y\"")))?;
    let [f, g] = key_ids::<2>(c, left, &[','])?;
    let [x, y] = key_ids::<2>(c, right, &[','])?;
    Ok((f, g, x, y))
}

// ---- quotient functors, natural systems, pre-tracks ----

fn functor_map_json(q: &QuotientFunctor) -> Value {
    let map: Map<String, Value> = q
        .src
        .morphisms()
        .map(|f| (q.src.name(f).to_string(), Value::from(q.dst.name(q.apply(f)))))
        .collect();
    Value::Object(map)
}

fn functor_from_parts(k: FiniteCategory, c: FiniteCategory, map: &Value) -> Result<QuotientFunctor, Error> {
    let map = object(map, "pi")?;
    if map.len() != k.num_morphisms() {
        return Err(Error::Structural("π must map every morphism of K".into()));
    }
    let images = k
        .morphisms()
        .map(|f| {
            let target = map
                .get(k.name(f))
                .ok_or_else(|| Error::Structural(format!("π misses {}", k.name(f))))?;
            let name = string(target, "π image")?;
            c.morphism_by_name(name)
                .ok_or_else(|| Error::Structural(format!("π maps to unknown morphism {name:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    QuotientFunctor::new(k, c, images)
}

fn hom_json(h: &GroupHom) -> Value {
    table_json(h.table())
}

fn hom_from_json(v: &Value) -> Result<GroupHom, Error> {
    Ok(GroupHom::new(indices(v, "map")?))
}

/// `{"base", "groups", "push", "pull"}`.
pub fn natural_system_to_json(base: &FiniteCategory, d: &NaturalSystem) -> Value {
    let mut v = natural_system_tables(base, d);
    v["base"] = category_to_json(base);
    v
}

fn natural_system_tables(base: &FiniteCategory, d: &NaturalSystem) -> Value {
    let groups: Map<String, Value> = base
        .morphisms()
        .map(|f| (base.name(f).to_string(), group_to_json(d.group(f))))
        .collect();
    let push: Map<String, Value> = d
        .push_table()
        .iter()
        .map(|(&(h, f), m)| (key_name(base, &[h, f]), hom_json(m)))
        .collect();
    let pull: Map<String, Value> = d
        .pull_table()
        .iter()
        .map(|(&(f, g), m)| (key_name(base, &[f, g]), hom_json(m)))
        .collect();
    json!({ "groups": groups, "push": push, "pull": pull })
}

fn natural_system_from_tables(base: &FiniteCategory, v: &Value) -> Result<NaturalSystem, Error> {
    let groups_obj = object(field(v, "groups")?, "groups")?;
    if groups_obj.len() != base.num_morphisms() {
        return Err(Error::Structural("one group per morphism required".into()));
    }
    let groups = base
        .morphisms()
        .map(|f| {
            let g = groups_obj
                .get(base.name(f))
                .ok_or_else(|| Error::Structural(format!("no group for {}", base.name(f))))?;
            group_from_json(g)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let maps = |name: &str| -> Result<BTreeMap<(Mor, Mor), GroupHom>, Error> {
        object(field(v, name)?, name)?
            .iter()
            .map(|(key, m)| {
                let [a, b] = key_ids::<2>(base, key, &[','])?;
                Ok(((a, b), hom_from_json(m)?))
            })
            .collect()
    };
    NaturalSystem::new(base, groups, maps("push")?, maps("pull")?)
}

pub fn natural_system_from_json(v: &Value) -> Result<(FiniteCategory, NaturalSystem), Error> {
    let base = category_from_json(field(v, "base")?)?;
    let d = natural_system_from_tables(&base, v)?;
    Ok((base, d))
}

/// `{"K", "C", "pi", "G"}` with `pi` mapping names of `K` to names of `C`.
pub fn pretrack_to_json(p: &PreTrack) -> Value {
    json!({
        "K": category_to_json(&p.pi.src),
        "C": category_to_json(&p.pi.dst),
        "pi": functor_map_json(&p.pi),
        "G": natural_system_tables(&p.pi.src, &p.g),
    })
}

/// Parses a pre-track without validating its laws.
pub fn pretrack_from_json(v: &Value) -> Result<PreTrack, Error> {
    let k = category_from_json(field(v, "K")?)?;
    let c = category_from_json(field(v, "C")?)?;
    let g = natural_system_from_tables(&k, field(v, "G")?)?;
    let pi = functor_from_parts(k, c, field(v, "pi")?)?;
    Ok(PreTrack { pi, g })
}

// ---- track categories ----

pub fn track_to_json(t: &TrackCategory) -> Value {
    let k = &t.underlying;
    let pairs = |m: &BTreeMap<(Mor, Mor), Vec<usize>>| -> Map<String, Value> {
        m.iter().map(|(&(a, b), v)| (key_name(k, &[a, b]), table_json(v))).collect()
    };
    let triples = |m: &BTreeMap<(Mor, Mor, Mor), Vec<usize>>| -> Map<String, Value> {
        m.iter().map(|(&(a, b, c), v)| (key_name(k, &[a, b, c]), table_json(v))).collect()
    };
    let tracks: Map<String, Value> = t
        .tracks
        .iter()
        .map(|(&(f, g), &n)| (key_name(k, &[f, g]), Value::from(n)))
        .collect();
    let vzero: Map<String, Value> = k.morphisms().map(|f| (k.name(f).to_string(), Value::from(t.zero(f)))).collect();
    json!({
        "underlying": category_to_json(k),
        "tracks": tracks,
        "vcomp": triples(&t.vcomp),
        "vneg": pairs(&t.vneg),
        "vzero": vzero,
        "lwhisk": triples(&t.lwhisk),
        "rwhisk": triples(&t.rwhisk),
    })
}

/// Parses a track category and checks its table shapes.
pub fn track_from_json(v: &Value) -> Result<TrackCategory, Error> {
    let k = category_from_json(field(v, "underlying")?)?;
    let pairs = |name: &str| -> Result<BTreeMap<(Mor, Mor), Vec<usize>>, Error> {
        object(field(v, name)?, name)?
            .iter()
            .map(|(key, t)| {
                let [a, b] = key_ids::<2>(&k, key, &[','])?;
                Ok(((a, b), indices(t, name)?))
            })
            .collect()
    };
    let triples = |name: &str| -> Result<BTreeMap<(Mor, Mor, Mor), Vec<usize>>, Error> {
        object(field(v, name)?, name)?
            .iter()
            .map(|(key, t)| {
                let [a, b, c] = key_ids::<3>(&k, key, &[','])?;
                Ok(((a, b, c), indices(t, name)?))
            })
            .collect()
    };
    let tracks = object(field(v, "tracks")?, "tracks")?
        .iter()
        .map(|(key, n)| {
            let [a, b] = key_ids::<2>(&k, key, &[','])?;
            Ok(((a, b), index(n, "track count")?))
        })
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    let zero_obj = object(field(v, "vzero")?, "vzero")?;
    if zero_obj.len() != k.num_morphisms() {
        return Err(Error::Structural("vzero must list one track per morphism".into()));
    }
    let vzero = k
        .morphisms()
        .map(|f| {
            let z = zero_obj
                .get(k.name(f))
                .ok_or_else(|| Error::Structural(format!("no 0_{}", k.name(f))))?;
            index(z, "vzero")
        })
        .collect::<Result<Vec<_>, _>>()?;
    let t = TrackCategory {
        tracks,
        vcomp: triples("vcomp")?,
        vneg: pairs("vneg")?,
        vzero,
        lwhisk: triples("lwhisk")?,
        rwhisk: triples("rwhisk")?,
        underlying: k,
    };
    t.check_structure()?;
    Ok(t)
}

/// The track category fields plus `"pi": {"C", "map"}`, `"G"` and
/// `"sigma": {f: [σ_f(track)]}`.
pub fn pi_g_track_to_json(x: &PiGTrack) -> Value {
    let k = &x.track.underlying;
    let mut v = track_to_json(&x.track);
    v["pi"] = json!({ "C": category_to_json(&x.pre.pi.dst), "map": functor_map_json(&x.pre.pi) });
    v["G"] = natural_system_tables(k, &x.pre.g);
    let sigma: Map<String, Value> = k.morphisms().map(|f| (k.name(f).to_string(), table_json(&x.sigma[f]))).collect();
    v["sigma"] = Value::Object(sigma);
    v
}

pub fn pi_g_track_from_json(v: &Value) -> Result<PiGTrack, Error> {
    let track = track_from_json(v)?;
    let k = &track.underlying;
    let pi_v = field(v, "pi")?;
    let c = category_from_json(field(pi_v, "C")?)?;
    let pi = functor_from_parts(k.clone(), c, field(pi_v, "map")?)?;
    let g = natural_system_from_tables(k, field(v, "G")?)?;
    let sigma_obj = object(field(v, "sigma")?, "sigma")?;
    if sigma_obj.len() != k.num_morphisms() {
        return Err(Error::Structural("sigma must have one entry per morphism".into()));
    }
    let sigma = k
        .morphisms()
        .map(|f| {
            let s = sigma_obj
                .get(k.name(f))
                .ok_or_else(|| Error::Structural(format!("no σ_{}", k.name(f))))?;
            indices(s, "sigma")
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PiGTrack {
        track,
        pre: PreTrack { pi, g },
        sigma,
    })
}

// ---- cocycles, coboundaries, classifications ----

/// `{"xi", "chi", "phi"}`; names resolve against `K` of `p`.
pub fn cocycle_to_json(p: &PreTrack, z: &CocycleTriple) -> Value {
    let k = p.k();
    let xi: Map<String, Value> = z
        .xi
        .iter()
        .map(|(&(f, g, h), &v)| (key_name(k, &[f, g, h]), Value::from(v)))
        .collect();
    let chi: Map<String, Value> = z
        .chi
        .iter()
        .map(|(&key, &v)| (chi_key_name(k, key), Value::from(v)))
        .collect();
    let phi: Map<String, Value> = z
        .phi
        .iter()
        .map(|(&(g, f), h)| (key_name(k, &[g, f]), hom_json(h)))
        .collect();
    json!({ "xi": xi, "chi": chi, "phi": phi })
}

/// Parses the tables of a cocycle and checks they match the index sets of `p`.
pub fn cocycle_from_json(p: &PreTrack, v: &Value) -> Result<CocycleTriple, Error> {
    let k = p.k();
    let xi = object(field(v, "xi")?, "xi")?
        .iter()
        .map(|(key, e)| {
            let [f, g, h] = key_ids::<3>(k, key, &[','])?;
            Ok(((f, g, h), index(e, "ξ value")?))
        })
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    let chi = object(field(v, "chi")?, "chi")?
        .iter()
        .map(|(key, e)| Ok((parse_chi_key(k, key)?, index(e, "χ value")?)))
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    let phi = object(field(v, "phi")?, "phi")?
        .iter()
        .map(|(key, m)| {
            let [g, f] = key_ids::<2>(k, key, &[','])?;
            Ok(((g, f), hom_from_json(m)?))
        })
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    let z = CocycleTriple { xi, chi, phi };
    z.check_shape(p)?;
    Ok(z)
}

/// A cocycle together with the track choice and seed it was extracted with.
pub fn extracted_cocycle_to_json(p: &PreTrack, z: &CocycleTriple, h: &TrackChoice, seed: u64) -> Value {
    let k = p.k();
    let mut v = cocycle_to_json(p, z);
    let choice: Map<String, Value> = h
        .h
        .iter()
        .map(|(&(f, g), &t)| (key_name(k, &[f, g]), Value::from(t)))
        .collect();
    v["choice"] = Value::Object(choice);
    v["seed"] = Value::from(seed);
    v
}

pub fn coboundary_to_json(p: &PreTrack, c: &Coboundary) -> Value {
    let k = p.k();
    let zeta: Map<String, Value> = c
        .zeta
        .iter()
        .map(|(&(f, g), &v)| (key_name(k, &[f, g]), Value::from(v)))
        .collect();
    json!({ "zeta": zeta })
}

pub fn coboundary_from_json(p: &PreTrack, v: &Value) -> Result<Coboundary, Error> {
    let k = p.k();
    let zeta = object(field(v, "zeta")?, "zeta")?
        .iter()
        .map(|(key, e)| {
            let [f, g] = key_ids::<2>(k, key, &[','])?;
            Ok(((f, g), index(e, "ζ value")?))
        })
        .collect::<Result<BTreeMap<(Mor, Mor), Elem>, Error>>()?;
    let c = Coboundary { zeta };
    c.check_shape(p)?;
    Ok(c)
}

/// `{"class_count", "representatives", "search_stats"}`.
pub fn classification_to_json(p: &PreTrack, r: &ClassificationResult) -> Value {
    let reps: Vec<Value> = r.representatives.iter().map(|z| cocycle_to_json(p, z)).collect();
    json!({
        "class_count": r.class_count,
        "representatives": reps,
        "search_stats": {
            "variables": r.stats.variables,
            "equations": r.stats.equations,
            "nodes": r.stats.nodes,
            "cocycles": r.stats.cocycles,
            "coboundaries": r.stats.coboundaries,
        },
    })
}
