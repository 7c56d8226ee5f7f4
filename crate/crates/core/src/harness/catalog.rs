use crate::extend::ExtensionKind;
use crate::harness::instance::{ActionSpec, Instance, SubringSpec, COLLAPSE_TAG, NEGATIVE_TAG};

fn inst(
    id: &str,
    ring: &str,
    subring: SubringSpec,
    action: &[&str],
    expected: Option<ExtensionKind>,
    tags: &[&str],
) -> Instance {
    Instance {
        id: id.into(),
        ring: ring.parse().expect("catalog construction parses"),
        subring,
        action: action.iter().map(|a| ActionSpec::Named(a.to_string())).collect(),
        expected,
        tags: tags.iter().map(|t| t.to_string()).collect(),
    }
}

/// The shipped instances, sorted by id.
pub fn catalog() -> Vec<Instance> {
    use ExtensionKind::*;
    use SubringSpec::*;
    let mut out = vec![
        inst(
            "inert_f64_f8",
            "gf(2,6)",
            Fixed(vec!["frobenius(3)".into()]),
            &["frobenius(2)"],
            Some(MinimalInert),
            &[],
        ),
        inst(
            "decomposed_f9_diag",
            "prod(gf(3,2),gf(3,2))",
            Diag,
            &["componentwise(frobenius)"],
            Some(MinimalDecomposed),
            &[],
        ),
        inst(
            "ramified_f9_idealization",
            "idealization(gf(3,2),self)",
            Base,
            &["componentwise(frobenius)"],
            Some(MinimalRamified),
            &[],
        ),
        inst("collapse_inert_f4", "gf(2,2)", Base, &["frobenius"], Some(MinimalInert), &[COLLAPSE_TAG]),
        inst(
            "collapse_decomposed_f5",
            "prod(gf(5,1),gf(5,1))",
            Diag,
            &["swap"],
            Some(MinimalDecomposed),
            &[COLLAPSE_TAG],
        ),
        inst(
            "collapse_ramified_f5",
            "idealization(gf(5,1),self)",
            Base,
            &["negsecond"],
            Some(MinimalRamified),
            &[COLLAPSE_TAG],
        ),
        inst(
            "char_violation_f4_idealization",
            "idealization(gf(2,2),self)",
            Base,
            &["componentwise(frobenius)"],
            Some(MinimalRamified),
            &[],
        ),
        inst(
            "invariance_negative_swap",
            "prod(gf(3,2),gf(3,2))",
            Gens(vec!["(0,a)".into()]),
            &["swap"],
            Some(MinimalInert),
            &[NEGATIVE_TAG],
        ),
        inst("trivial_equal_f9", "gf(3,2)", Full, &["frobenius"], Some(TrivialEqual), &[]),
        inst("nonminimal_f16", "gf(2,4)", Base, &["frobenius"], Some(NotMinimal), &[]),
        inst(
            "z4_idealization",
            "idealization(zmod(4),quot{2})",
            Base,
            &[],
            Some(MinimalRamified),
            &[],
        ),
        inst(
            "f2_cubed",
            "prod(prod(gf(2,1),gf(2,1)),gf(2,1))",
            Base,
            &[],
            Some(NotMinimal),
            &[],
        ),
        inst("funcfield_p5_a2", "funcfield(5,x)", Base, &["scale(2)"], None, &[]),
        inst("funcfield_p7_a3", "funcfield(7,x)", Base, &["scale(3)"], None, &[]),
        inst(
            "funcfield_translate_negative",
            "funcfield(5,x)",
            Base,
            &["translate(1)"],
            None,
            &[NEGATIVE_TAG],
        ),
    ];
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn find(id: &str) -> Option<Instance> {
    catalog().into_iter().find(|i| i.id == id)
}
