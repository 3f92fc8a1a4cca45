from patregion.analysis import matrix_A
from patregion.colouring import enumerate_inherited, ritmo_colours
from patregion.golden import MATRIX_A_4_3, REGISTRY, _has_monochromatic_descent, reproduce


def test_registry_ids():
    assert set(REGISTRY) == {"table-1", "matrix-a-3-3", "minor", "landscape", "fact-1-10", "fig-1", "fig-4", "fig-6"}


def test_all_but_landscape_pass():
    results = {r.fact_id: r.passed for r in reproduce("all")}
    assert results.pop("landscape") is False
    assert all(results.values()), results


def test_landscape_differs_in_one_invalid_column():
    """The reference (4,3) matrix differs from the computed one in a single column whose label cannot occur."""
    computed = matrix_A(4, 3)
    ref = MATRIX_A_4_3
    assert ref.shape == computed.shape == (15, 29)
    assert ref.row_labels == computed.row_labels
    differing = [j for j in range(29) if ref.col_labels[j] != computed.col_labels[j]
                 or any(ref.rows[i][j] != computed.rows[i][j] for i in range(15))]
    assert differing == [23]
    bad = ref.col_labels[23]
    assert _has_monochromatic_descent(bad)
    assert bad not in enumerate_inherited(4, 3)
    assert computed.col_labels[23] in enumerate_inherited(4, 3)
    # every label of the computed matrix is a RITMO-consistent colouring
    assert not any(_has_monochromatic_descent(c) for c in computed.col_labels)
    assert ref.rank() == computed.rank() == 13


def test_fixed_column_witness():
    from patregion.colouring import minimal_witness

    col = matrix_A(4, 3).col_labels[23]
    w = minimal_witness(col, 4)
    assert w == (4, 2, 3, 1) and ritmo_colours(w)[-3:] == (2, 2, 3)
