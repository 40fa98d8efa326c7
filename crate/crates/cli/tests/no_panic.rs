use clap::Parser;
use laumut_cli::{run, CommandRequest};
use proptest::prelude::*;

fn request(args: &[&str]) -> Option<CommandRequest> {
    CommandRequest::try_parse_from(std::iter::once("laumut").chain(args.iter().copied())).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn malformed_polynomials_are_usage_errors(text in "[xyz0-9^*/+ ()-]{0,16}") {
        let Some(req) = request(&["newton", "--f", &text, "--kmax", "2"]) else {
            return Ok(());
        };
        match run(&req) {
            Ok(out) => prop_assert!(out.code == 0 || out.code == 1),
            Err(e) => prop_assert!(e.0.contains("position"), "{}", e.0),
        }
    }

    #[test]
    fn malformed_directions_never_panic(
        f in "[xy1^ +-]{1,12}",
        by in "[xy1^ +-]{0,8}",
        u in "[0-9, -]{0,6}",
        sub in prop::sample::select(vec!["check", "mutate", "family", "verify"]),
    ) {
        if let Some(req) = request(&[sub, "--f", &f, "--u", &u, "--by", &by]) {
            let _ = run(&req);
        }
    }
}
