use mgnet::loads::{closed_form, per_subnet_prelogs, thresholds};
use mgnet::topology::{build_hex_torus, build_sectored_torus, build_wyner};
use mgnet::{achievable_region, assign, message_ledger, q, qi, validate, MgPoint, Model, Network, SchemeKind};

fn prelogs(net: &Network, d: u32, scheme: SchemeKind) -> (mgnet::Q, mgnet::Q) {
    let a = assign(net, d, scheme).unwrap();
    let (subnets, report) = validate(net, &a).unwrap();
    assert!(report.ok(), "{:?}", report.violations);
    let r = message_ledger(net, &a, &subnets).unwrap();
    per_subnet_prelogs(&r, net.model, d, net.l).unwrap()
}

#[test]
fn ledger_feeds_region() {
    let net = build_wyner(24, 3).unwrap();
    let (tx, rx) = prelogs(&net, 6, SchemeKind::BothCompRx);
    assert_eq!((tx, rx), (q(9, 8), q(21, 8)));
    let region = achievable_region(Model::WynerLinear, 6, 3, tx, rx).unwrap();
    assert_eq!(region.max_sum(), q(21, 8));
    assert!(region.contains(&MgPoint::new(q(3, 2), q(9, 8))));
}

#[test]
fn hex_and_sectorized_match_closed_forms() {
    let hex = build_hex_torus(4, 2, 3).unwrap();
    for scheme in [SchemeKind::BothCompRx, SchemeKind::BothCompTx] {
        let cf = closed_form(Model::Hexagonal, scheme, 8, 3).unwrap();
        assert_eq!(prelogs(&hex, 8, scheme), (cf.mu_tx, cf.mu_rx));
    }
    let sec = build_sectored_torus(2, 2, 3).unwrap();
    let t = thresholds(Model::SectorizedHexagonal, 4, 3).unwrap();
    assert_eq!(prelogs(&sec, 4, SchemeKind::BothCompRx), (t.tx_r, t.rx_r));
    let region = achievable_region(Model::SectorizedHexagonal, 4, 3, t.tx_r, t.rx_r).unwrap();
    assert!(region.polyline().contains(&MgPoint::new(qi(1), q(3, 2))));
}
