import csv
from pathlib import Path

import mpmath
import pytest
from flint import acb, arb

from lzeros.numerics import PrecisionContext

DATA = Path(__file__).parent / "data"
ZEROS_10K = DATA / "zeta_zeros_1_10000.csv"

_acceptance: dict[int, tuple[str, str]] = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    _acceptance[number] = ("PASS" if ok else "FAIL", detail)
    print(f"ACCEPTANCE {number:2d}: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        status, detail = _acceptance[number]
        terminalreporter.write_line(f"ACCEPTANCE {number:2d}: {status} {detail}")


def to_mp(x, dps: int = 60):
    """mpmath value of an arb/acb midpoint."""
    if isinstance(x, acb):
        return mpmath.mpc(to_mp(x.real, dps), to_mp(x.imag, dps))
    if isinstance(x, arb):
        return mpmath.mpf(x.mid().str(dps + 5, radius=False))
    return mpmath.mpmathify(x)


def _read_rows(path: Path) -> list[tuple[int, str]]:
    if not path.exists():
        return []
    with open(path, newline="") as fh:
        return [(int(r["n"]), r["y"]) for r in csv.DictReader(fh)]


@pytest.fixture(scope="session")
def zeta_zeros_10k() -> list[float]:
    """Ordinates of the first 10^4 zeta zeros, solved by this package and cached on disk."""
    rows = _read_rows(ZEROS_10K)
    if len(rows) < 10000:
        from lzeros.cli import main

        DATA.mkdir(exist_ok=True)
        code = main(["scan", "--from", "1", "--to", "10000", "--digits", "15",
                     "--out", str(ZEROS_10K), "--resume"])
        assert code == 0
        rows = _read_rows(ZEROS_10K)
    rows.sort()
    assert [n for n, _ in rows] == list(range(1, 10001))
    return [float(y) for _, y in rows]


@pytest.fixture(scope="session")
def zeta_zeros_100(zeta_zeros_10k) -> list[float]:
    return zeta_zeros_10k[:100]


@pytest.fixture
def ctx30():
    return PrecisionContext(30)

