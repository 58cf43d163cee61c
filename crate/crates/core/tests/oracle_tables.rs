#[path = "support/oracle.rs"]
mod oracle;

#[test]
fn lemma_products_n3() {
    assert_eq!(oracle::check(3), Ok(63));
}

#[test]
fn lemma_products_n4() {
    assert_eq!(oracle::check(4), Ok(160));
}
