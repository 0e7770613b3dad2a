// Chern classes of twisted formal K-classes and the projective Euler
// pushforward on a trivial bundle.

use pushcalc::chern::{composition_check, composition_routes, diamond, dual_check, pull_push_check, ChernRing, OrientationExpr};

fn main() {
    let ring = ChernRing::single(2, 6);
    let twisted = OrientationExpr::twisted(0, 0, 1);
    for j in 1..=3 {
        println!("c_{j}(L ⊗ ϑ) = {}", ring.display(&ring.chern_class(&twisted, j).unwrap()));
    }

    let xi3 = ring.pow(&ring.xi(0), 3);
    println!("t_1 ⋄ ξ^3 = {}", ring.display(&diamond(1, &xi3, 0)));
    let pushed = ring.pe_trivial(&xi3, &OrientationExpr::untwisted(0), 0).unwrap();
    println!("pushforward of ξ^3: {}", ring.display(&pushed));
    let deep = ChernRing::single(2, 3).pe_trivial(&xi3, &OrientationExpr::untwisted(0), 0);
    println!("same pushforward with cutoff 3: {}", deep.unwrap_err());

    println!("duality k = 2, r = 1: {}", dual_check(2, 1).pass);
    println!("pull-push k = 3, r = -1: {}", pull_push_check(3, -1).pass);

    let routes = composition_routes(1, 0, 0, 1, 0).unwrap();
    for (n, p) in [&routes.route1, &routes.route2, &routes.route3].into_iter().enumerate() {
        println!("route {}: {}", n + 1, routes.ring.display(p));
    }
    let rep = composition_check(1, 0, 0, 1, 0).unwrap();
    println!("{}", serde_json::to_string(&rep).unwrap());
}
