import pytest

from lzend.errors import ContractViolation, FamilyIntegrityError
from lzend.family import (
    big_k,
    build_family,
    check_greedy_family,
    family_length,
    format_table,
    ratio_table,
    table_csv,
    witness_parsing_family,
)
from lzend.parsing import Parsing, greedy_parse, validate
from lzend.search import z_end
from lzend.text import Text

from oracles import min_parsing_size


def test_k1_expansion():
    inst = build_family(1)
    assert inst.K == 2
    assert inst.text.render("") == "aa" + "aa" + "bbbb" + "abbb" + "aabbb"
    assert inst.text.n == 17
    assert inst.blocks == ((9, 12), (13, 17))


@pytest.mark.parametrize("k, K, n", [(1, 2, 17), (2, 6, 51), (3, 14, 167)])
def test_lengths(k, K, n):
    inst = build_family(k)
    assert inst.K == big_k(k) == sum(2**i for i in range(1, k + 1)) == K
    assert inst.text.n == family_length(k) == n == 2 + K + 4 + sum(j + 3 for j in range(1, K + 1))


def test_k_must_be_positive():
    with pytest.raises(ContractViolation):
        build_family(0)


@pytest.mark.parametrize("k, size", [(1, 10), (2, 19), (3, 36)])
def test_greedy_sizes(k, size):
    assert check_greedy_family(k).size == size == greedy_parse(build_family(k).text).size


def test_incremental_law_on_prefixes():
    # the greedy parsing of W_j extends that of W_{j-1} by a^j b^2, b
    inst = build_family(2)
    prev = greedy_parse(Text(inst.text.symbols[: inst.prefix_end], inst.text.labels)).lengths
    assert prev == (1, 1, 2, 4, 1, 1, 2)
    for j, (start, end) in enumerate(inst.blocks, 1):
        cur = greedy_parse(Text(inst.text.symbols[:end], inst.text.labels)).lengths
        assert cur == prev + (j + 2, 1)
        prev = cur


def test_check_detects_wrong_structure():
    inst = build_family(1)
    wrong = greedy_parse(Text(inst.text.symbols[:-1], inst.text.labels))
    with pytest.raises(FamilyIntegrityError):
        check_greedy_family(1, inst, wrong)


@pytest.mark.parametrize("k, size", [(1, 9), (2, 14), (3, 23)])
def test_witness(k, size):
    inst = build_family(k)
    w = witness_parsing_family(k, inst)
    assert w.size == size and validate(inst.text, w)
    assert w.lengths[k + 2 : k + 6] == (1, 1, 1, 1)


def test_witness_blocks_sourced_in_b_run():
    # every a^j b^3 copies the occurrence ending at the third b of b^4
    inst = build_family(2)
    w = witness_parsing_family(2, inst)
    third_b = inst.prefix_end - 1
    assert {ph.source_end for ph in w.phrases[-inst.K :]} == {third_b}


def test_k1_exact_optimum():
    inst = build_family(1)
    assert z_end(inst.text) == min_parsing_size(inst.text.symbols) == 9
    assert 10 / 9 == pytest.approx(1.111, abs=1e-3)


def test_k2_witness_is_optimal():
    # branch and bound still reaches k=2 (51 symbols); k=3 is out of reach
    assert z_end(build_family(2).text) == 14


def test_ratio_table_formula_rows():
    rows = ratio_table(10, measure_limit=3)
    assert [r.measured for r in rows] == [True] * 3 + [False] * 7
    assert rows[-1].greedy_size == 4107 and rows[-1].witness_size == 2062
    assert rows[-1].ratio == pytest.approx(4107 / 2062) and rows[-1].ratio > 1.99
    assert rows[0].ratio == pytest.approx(10 / 9)
    assert all(a.ratio < b.ratio for a, b in zip(rows, rows[1:]))
    assert rows[2].ratio == pytest.approx(36 / 23)


def test_table_output_formats():
    rows = ratio_table(4, measure_limit=2)
    csv_lines = table_csv(rows).splitlines()
    assert csv_lines[0] == "k,n,z_e_measured,witness_size,ratio,basis"
    assert csv_lines[1] == "1,17,10,9,1.111111,measured"
    assert csv_lines[3].split(",")[2] == "" and csv_lines[3].endswith("formula")
    text = format_table(rows).splitlines()
    assert len(text) == 5 and "measured" in text[1] and "formula" in text[4]
