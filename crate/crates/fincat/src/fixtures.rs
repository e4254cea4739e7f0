//! A small zoo of example structures used across the test suites and the
//! bundled structure files.
//!
//! Every fixture stays at desk scale (at most 4 objects and 12 morphisms at
//! the category level) so exhaustive enumeration over the whole catalog
//! finishes in seconds.

use crate::cat::{FinCategory, FinFunctor};
use crate::monoidal::{MonoidalFunctorData, MonoidalStructure};
use std::collections::BTreeMap;

/// The terminal category: one object, one morphism.
pub fn terminal_category() -> FinCategory {
    FinCategory::from_tables(
        "one",
        vec!["*".into()],
        vec![("id*".into(), "*".into(), "*".into())],
        vec![("*".into(), "id*".into())],
        vec![("id*".into(), "id*".into(), "id*".into())],
    )
    .expect("fixture")
}

/// The walking isomorphism: objects 0, 1 and mutually inverse `iso`, `inv`.
pub fn walking_iso() -> FinCategory {
    FinCategory::from_tables(
        "iso",
        vec!["0".into(), "1".into()],
        vec![
            ("id0".into(), "0".into(), "0".into()),
            ("id1".into(), "1".into(), "1".into()),
            ("iso".into(), "0".into(), "1".into()),
            ("inv".into(), "1".into(), "0".into()),
        ],
        vec![("0".into(), "id0".into()), ("1".into(), "id1".into())],
        vec![
            ("id0".into(), "id0".into(), "id0".into()),
            ("id1".into(), "id1".into(), "id1".into()),
            ("iso".into(), "id0".into(), "iso".into()),
            ("id1".into(), "iso".into(), "iso".into()),
            ("inv".into(), "id1".into(), "inv".into()),
            ("id0".into(), "inv".into(), "inv".into()),
            ("inv".into(), "iso".into(), "id0".into()),
            ("iso".into(), "inv".into(), "id1".into()),
        ],
    )
    .expect("fixture")
}

/// The discrete category on two objects.
pub fn discrete_two() -> FinCategory {
    FinCategory::from_tables(
        "discrete2",
        vec!["a".into(), "b".into()],
        vec![
            ("ida".into(), "a".into(), "a".into()),
            ("idb".into(), "b".into(), "b".into()),
        ],
        vec![("a".into(), "ida".into()), ("b".into(), "idb".into())],
        vec![
            ("ida".into(), "ida".into(), "ida".into()),
            ("idb".into(), "idb".into(), "idb".into()),
        ],
    )
    .expect("fixture")
}

/// The walking arrow: objects s, t and one non-invertible morphism.
pub fn walking_arrow() -> FinCategory {
    FinCategory::from_tables(
        "arrow2",
        vec!["s".into(), "t".into()],
        vec![
            ("ids".into(), "s".into(), "s".into()),
            ("idt".into(), "t".into(), "t".into()),
            ("ar".into(), "s".into(), "t".into()),
        ],
        vec![("s".into(), "ids".into()), ("t".into(), "idt".into())],
        vec![
            ("ids".into(), "ids".into(), "ids".into()),
            ("idt".into(), "idt".into(), "idt".into()),
            ("ar".into(), "ids".into(), "ar".into()),
            ("idt".into(), "ar".into(), "ar".into()),
        ],
    )
    .expect("fixture")
}

/// Objects are residues mod 4 with exactly one morphism `m -> n` when
/// `m ≡ n (mod 2)`. Its skeleton is the discrete two-object category.
pub fn z4_parity_category() -> FinCategory {
    let objects: Vec<String> = (0..4).map(|m| m.to_string()).collect();
    let mut morphisms = Vec::new();
    for m in 0..4u8 {
        for n in 0..4u8 {
            if m % 2 == n % 2 {
                morphisms.push((format!("m{m}to{n}"), m.to_string(), n.to_string()));
            }
        }
    }
    let identities: Vec<(String, String)> =
        (0..4).map(|m| (m.to_string(), format!("m{m}to{m}"))).collect();
    let mut compose = Vec::new();
    for m in 0..4u8 {
        for n in 0..4u8 {
            for p in 0..4u8 {
                if m % 2 == n % 2 && n % 2 == p % 2 {
                    compose.push((
                        format!("m{n}to{p}"),
                        format!("m{m}to{n}"),
                        format!("m{m}to{p}"),
                    ));
                }
            }
        }
    }
    FinCategory::from_tables("z4parity", objects, morphisms, identities, compose)
        .expect("fixture")
}

/// The catalog the acceptance suite enumerates: every member has at most 4
/// objects and 12 morphisms.
pub fn catalog() -> Vec<FinCategory> {
    vec![
        terminal_category(),
        walking_iso(),
        discrete_two(),
        walking_arrow(),
        z4_parity_category(),
    ]
}

/// The unique functor from the walking iso to the terminal category; a
/// surjective equivalence.
pub fn collapse_iso_to_terminal() -> FinFunctor {
    let iso = walking_iso();
    let one = terminal_category();
    let obj: BTreeMap<String, String> =
        [("0", "*"), ("1", "*")].map(|(k, v)| (k.into(), v.into())).into();
    let mor: BTreeMap<String, String> = [("id0", "id*"), ("id1", "id*"), ("iso", "id*"), ("inv", "id*")]
        .map(|(k, v)| (k.into(), v.into()))
        .into();
    FinFunctor::from_maps("iso_to_one", iso, one, &obj, &mor).expect("fixture")
}

/// Inclusion of the terminal category at object 0 of the walking iso.
pub fn include_terminal_into_iso() -> FinFunctor {
    let one = terminal_category();
    let iso = walking_iso();
    let obj: BTreeMap<String, String> = [("*".to_string(), "0".to_string())].into();
    let mor: BTreeMap<String, String> = [("id*".to_string(), "id0".to_string())].into();
    FinFunctor::from_maps("one_into_iso", one, iso, &obj, &mor).expect("fixture")
}

/// Inclusion of the terminal category at object a of discrete-2; not
/// essentially surjective.
pub fn include_terminal_into_discrete_two() -> FinFunctor {
    let one = terminal_category();
    let d2 = discrete_two();
    let obj: BTreeMap<String, String> = [("*".to_string(), "a".to_string())].into();
    let mor: BTreeMap<String, String> = [("id*".to_string(), "ida".to_string())].into();
    FinFunctor::from_maps("one_into_discrete2", one, d2, &obj, &mor).expect("fixture")
}

/// Residue addition as a string operation, shared by the mod-2 fixtures.
pub fn mod2_add(a: &str, b: &str) -> String {
    let x: u8 = a.parse().expect("mod2 object");
    let y: u8 = b.parse().expect("mod2 object");
    ((x + y) % 2).to_string()
}

/// The discrete category on objects 0, 1.
pub fn discrete_mod2_category() -> FinCategory {
    FinCategory::from_tables(
        "mod2",
        vec!["0".into(), "1".into()],
        vec![
            ("id0".into(), "0".into(), "0".into()),
            ("id1".into(), "1".into(), "1".into()),
        ],
        vec![("0".into(), "id0".into()), ("1".into(), "id1".into())],
        vec![
            ("id0".into(), "id0".into(), "id0".into()),
            ("id1".into(), "id1".into(), "id1".into()),
        ],
    )
    .expect("fixture")
}

/// Discrete objects 0, 1 with tensor given by addition mod 2 and identity
/// coherence throughout.
pub fn mod2_monoidal() -> MonoidalStructure {
    MonoidalStructure::strict_from(
        discrete_mod2_category(),
        "0",
        |a, b| mod2_add(a, b),
        |f, g| format!("id{}", mod2_add(&f[2..], &g[2..])),
    )
    .expect("fixture")
}

/// The terminal category with its only possible tensor.
pub fn terminal_monoidal() -> MonoidalStructure {
    MonoidalStructure::strict_from(
        terminal_category(),
        "*",
        |_, _| "*".into(),
        |_, _| "id*".into(),
    )
    .expect("fixture")
}

/// The mod-4 parity category with tensor given by addition mod 4. Strict
/// as a monoidal category; the interesting behaviour is in the functors
/// out of it.
pub fn z4_parity_monoidal() -> MonoidalStructure {
    let add4 = |a: &str, b: &str| -> String {
        let x: u8 = a.parse().expect("z4 object");
        let y: u8 = b.parse().expect("z4 object");
        ((x + y) % 4).to_string()
    };
    let parse_mor = |f: &str| -> (String, String) {
        // "m{src}to{tgt}"
        let rest = &f[1..];
        let mut it = rest.split("to");
        (it.next().unwrap().to_string(), it.next().unwrap().to_string())
    };
    MonoidalStructure::strict_from(
        z4_parity_category(),
        "0",
        |a, b| add4(a, b),
        move |f, g| {
            let (fs, ft) = parse_mor(f);
            let (gs, gt) = parse_mor(g);
            format!("m{}to{}", add4(&fs, &gs), add4(&ft, &gt))
        },
    )
    .expect("fixture")
}

/// The parity quotient as a strict monoidal functor from the mod-4 parity
/// structure onto the discrete mod-2 structure. A strict monoidal
/// surjective equivalence with no strict monoidal equivalence back: a
/// strict reverse functor would need an object n with n + n = 0 in mod 4,
/// forcing its image into {0, 2} and killing essential surjectivity onto
/// the odd objects.
pub fn parity_quotient_monoidal_functor() -> MonoidalFunctorData {
    let source = z4_parity_monoidal();
    let target = mod2_monoidal();
    let obj: BTreeMap<String, String> = (0..4u8)
        .map(|m| (m.to_string(), (m % 2).to_string()))
        .collect();
    let mor: BTreeMap<String, String> = (0..4u8)
        .flat_map(|m| (0..4u8).filter(move |n| m % 2 == n % 2).map(move |n| (m, n)))
        .map(|(m, n)| (format!("m{m}to{n}"), format!("id{}", m % 2)))
        .collect();
    let f = FinFunctor::from_maps(
        "parity_quotient",
        source.base().clone(),
        target.base().clone(),
        &obj,
        &mor,
    )
    .expect("fixture");
    MonoidalFunctorData::strict_from_functor(source, target, f).expect("fixture")
}

/// The parity quotient from the mod-4 category onto discrete-2; a
/// surjective equivalence.
pub fn z4_parity_to_discrete_two() -> FinFunctor {
    let z4 = z4_parity_category();
    let d2 = discrete_two();
    let obj: BTreeMap<String, String> = (0..4u8)
        .map(|m| (m.to_string(), if m % 2 == 0 { "a".into() } else { "b".into() }))
        .collect();
    let mor: BTreeMap<String, String> = (0..4u8)
        .flat_map(|m| (0..4u8).filter(move |n| m % 2 == n % 2).map(move |n| (m, n)))
        .map(|(m, n)| {
            (
                format!("m{m}to{n}"),
                if m % 2 == 0 { "ida".into() } else { "idb".into() },
            )
        })
        .collect();
    FinFunctor::from_maps("z4_to_discrete2", z4, d2, &obj, &mor).expect("fixture")
}
