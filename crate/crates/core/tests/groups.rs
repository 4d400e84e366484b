use reflinv::groups::{builtin_group, molien_series, product_formula_series, GroupName, DEFAULT_BOUND};

#[test]
fn big_closures_and_molien() {
    let t = std::time::Instant::now();
    let f4 = builtin_group(GroupName::F4, DEFAULT_BOUND).unwrap();
    assert_eq!(f4.order(), 1152);
    eprintln!("F4 closure {:?}", t.elapsed());
    let m = molien_series(&f4, 32).unwrap();
    assert_eq!(m.as_integers().unwrap(), product_formula_series(&[2, 6, 8, 12], 32));
    eprintln!("F4 molien {:?}", t.elapsed());
    let h4 = builtin_group(GroupName::H4, DEFAULT_BOUND).unwrap();
    assert_eq!(h4.order(), 14400);
    eprintln!("H4 closure {:?}", t.elapsed());
    let m = molien_series(&h4, 30).unwrap();
    assert_eq!(m.as_integers().unwrap(), product_formula_series(&[2, 12, 20, 30], 30));
    eprintln!("H4 molien {:?}", t.elapsed());
    for (n, o) in [(GroupName::G8, 1152), (GroupName::G12, 7200)] {
        assert_eq!(builtin_group(n, DEFAULT_BOUND).unwrap().order(), o);
    }
    eprintln!("all {:?}", t.elapsed());
}
