use epiattr_core::*;
use proptest::prelude::*;

fn directive() -> impl Strategy<Value = DirectiveSpec> {
    ("[0-3]{0,3}", "[0-3]{1,5}").prop_map(|(pre, per)| {
        DirectiveSpec::new(Word::new(&pre).unwrap(), Word::new(&per).unwrap()).unwrap()
    })
}

fn tower_up_to(spec: &DirectiveSpec, max_len: usize) -> Tower {
    let mut t = Tower::new(spec.clone());
    let caps = Caps::default();
    while t.top_level() < 64 {
        let mut next = t.clone();
        if next.grow(&caps).unwrap().length > max_len {
            break;
        }
        t = next;
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prefix_attractors_are_minimum(spec in directive()) {
        let t = tower_up_to(&spec, 2000);
        let mut incremental: Vec<usize> = Vec::new();
        for n in 1..=t.top_level() {
            let word = t.level_word(n).unwrap();
            let a = prefix_attractor(&t, n).unwrap();
            prop_assert_eq!(a.len(), letter_lower_bound(&word));
            let verifier = Verifier::new(word.clone()).unwrap();
            prop_assert!(verifier.check(a.positions()).unwrap().is_pass());

            let prev = t.level(n - 1).unwrap();
            let rec = t.level(n).unwrap();
            incremental = next_attractor(&incremental, rec.consumed.unwrap(), &prev.m_map, prev.length);
            prop_assert_eq!(incremental.as_slice(), a.positions());

            let m = mirror_attractor(&a, &word).unwrap();
            prop_assert!(verifier.check(m.positions()).unwrap().is_pass());
        }
    }

    #[test]
    fn factor_candidates_carry_the_verifier_verdict(
        spec in directive(),
        start in 0usize..200,
        len in 1usize..40,
    ) {
        let t = tower_up_to(&spec, 4000);
        prop_assume!(start + len <= t.prefix().len());
        let target = t.prefix().slice(start..start + len);
        let fa = factor_attractor(&t, &target).unwrap();
        let d = letter_lower_bound(&target);
        prop_assert_eq!(fa.attractor.len(), d);
        let letters: std::collections::BTreeSet<_> =
            fa.attractor.positions().iter().map(|&p| target.letter(p)).collect();
        prop_assert_eq!(letters.len(), d);
        let verdict = is_attractor(&target, fa.attractor.positions()).unwrap();
        prop_assert_eq!(fa.attractor.status.is_verified(), verdict.is_pass());
        prop_assert_eq!(fa.attractor.status.witness(), verdict.witness());

        if let Some(ctx) = fa.context {
            let level = t.level(ctx.level).unwrap();
            prop_assert_eq!(ctx.case == 1, level.case == Some(ClosureCase::NewLetter));
            if let Some(k) = ctx.k {
                prop_assert!(k < ctx.i && k < ctx.j && ctx.i < ctx.level && ctx.j < ctx.level);
            }
        }
        // the statement itself: some attractor of size d exists
        if len <= 14 {
            let exists = attractor_of_size(&target, d, &OracleLimits::default()).unwrap();
            prop_assert!(exists.is_some());
        }
    }
}
