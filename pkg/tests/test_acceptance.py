"""One test per acceptance criterion; each prints its pass/fail row."""

from shiftlab import acceptance


def _check(n, fn):
    ok = fn()
    print(f"criterion {n} {'pass' if ok else 'fail'} {acceptance.LABELS[n - 1]}")
    assert ok


def test_criterion_1_golden_mean_counts():
    _check(1, acceptance.criterion_1)


def test_criterion_2_fischer_minimality():
    _check(2, acceptance.criterion_2)


def test_criterion_3_synchronizing_words():
    _check(3, acceptance.criterion_3)


def test_criterion_4_evenmap_decoder():
    _check(4, acceptance.criterion_4)


def test_criterion_5_xor_degree_two():
    _check(5, acceptance.criterion_5)


def test_criterion_6_hyperbolic_certificates():
    _check(6, acceptance.criterion_6)


def test_criterion_7_half_sync_transfer():
    _check(7, acceptance.criterion_7)


def test_criterion_8_common_extension():
    _check(8, acceptance.criterion_8)


def test_criterion_9_dyck_oracle():
    _check(9, acceptance.criterion_9)


def test_criterion_10_determinism():
    _check(10, acceptance.criterion_10)
