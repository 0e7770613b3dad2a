// Every example under examples/ runs to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(newton_identities);
example!(exactness);
example!(pushforward_classes);
example!(twisted_algebra);
example!(trivial_bundle);
example!(lie_bracket);
