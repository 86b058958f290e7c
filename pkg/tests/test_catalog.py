import pytest

from cykit.catalog import Relation, catalog_get, default_catalog, load_catalog
from cykit.cystruct import cy2_check
from cykit.errors import NotFoundError
from cykit.families import hadamard_product
from cykit.frobenius import equivalent_k, mum_check
from cykit.text import parse_operator, render_operator

CAT = default_catalog()
WITH_OPS = [i for i in CAT.ids() if CAT.entries[i].operator is not None]

E3 = "T^4 - 16*x*(128*T^4+256*T^3+304*T^2+176*T+39) + 2^20*x^2*(T+1)^4"


def test_tilde3():
    e = catalog_get("tilde-3")
    assert e.operator == parse_operator(E3)
    assert "hypergeometric-pullback" in e.tags
    assert catalog_get("#204") is e


def test_sporadic18():
    expected = parse_operator(
        "T^4 - 4*x*(2*T+1)^2*(3*T^2+3*T+1) - 16*x^2*(2*T+1)*(2*T+3)*(4*T+3)*(4*T+5)")
    assert catalog_get("sporadic-18").operator == expected
    assert catalog_get("#18").id == "sporadic-18"


def test_grid_cell_alias():
    e = catalog_get("hadamard-A-a")
    assert "#45" in e.aliases and catalog_get("#45") is e
    assert e.operator == hadamard_product("A", "a")
    assert catalog_get("(A)*(a)") is e


def test_not_found_lists_near_matches():
    with pytest.raises(NotFoundError) as info:
        catalog_get("tilde-33")
    assert "tilde-3" in info.value.near
    with pytest.raises(KeyError):
        catalog_get("no-such-thing-at-all")


def test_superseeker_rows_resolve():
    row = CAT.rows[0]
    e = catalog_get(row.id)
    assert e.operator is None and "superseeker" in e.tags


def test_corrected_entries_carry_notes():
    for e in CAT.entries.values():
        if e.corrected:
            assert e.notes and e.printed, e.id


def test_erratum_rows_carry_notes():
    flagged = [r for r in CAT.rows if r.erratum]
    assert len(flagged) == 7
    assert all(r.notes for r in flagged)


@pytest.mark.parametrize("ident", WITH_OPS)
def test_entry_structure(ident):
    e = CAT.entries[ident]
    L = e.operator
    assert parse_operator(render_operator(L, "theta")) == L
    assert parse_operator(render_operator(L, "machine")) == L
    if e.excluded:
        return
    assert mum_check(L)
    if L.order == 4 and "factorable" not in e.tags:
        assert cy2_check(L)


def test_excluded_entries_are_known():
    excluded = sorted(i for i in CAT.ids() if CAT.entries[i].excluded)
    assert {"hadamard-C-h", "hadamard-C-e", "diffop-232", "factor-232-L1"} <= set(excluded)


def test_product_relations():
    rels = [r for r in CAT.relations if r.kind == "product-of"]
    assert len(rels) == 40
    for r in rels:
        name, left, right = r.args
        assert CAT.get(name).operator == hadamard_product(left, right)


def test_equivalence_relations_hold_up_to_sign():
    rels = [r for r in CAT.relations if r.kind == "equivalent"]
    assert len(rels) == 10
    for r in rels:
        A, B = (CAT.get(a).operator for a in r.args)
        assert equivalent_k(A, B, 12, twist=-1), r


def test_loader_rejects_bad_header():
    with pytest.raises(ValueError):
        load_catalog("CYCATALOG 2\n")


def test_loader_minimal_record():
    c = load_catalog("CYCATALOG 1\nentry demo\naliases: d1\ntags: test\nCYOP 1\norder 4 degree 0\n"
                     "0 0 0 0 1\nend\nrelation equivalent demo demo\n")
    assert c.get("d1").operator == parse_operator("T^4")
    assert c.relations[0] == Relation("equivalent", ("demo", "demo"))
