import pytest

from baxops.convolution import ConvolutionContext
from baxops.models import m2_delta0, m2_delta1, matrix_algebra, upper_triangular_algebra
from baxops import structures as st


@pytest.fixture(scope="session")
def m2():
    return matrix_algebra(2)


@pytest.fixture(scope="session")
def delta0():
    return m2_delta0()


@pytest.fixture(scope="session")
def delta1():
    return m2_delta1()


@pytest.fixture(scope="session")
def ctx0(m2, delta0):
    return ConvolutionContext(m2, delta0)


@pytest.fixture(scope="session")
def quadri_m2(ctx0):
    return st.build_quadri(ctx0.end, ctx0.beta("Delta0"), ctx0.gamma("Delta0"))


@pytest.fixture(scope="session")
def split_dend():
    """Upper triangular 2x2 matrices split by the subalgebra spanned by E11."""
    return st.subalgebra_split_dendriform(upper_triangular_algebra(2), ["E11"])


@pytest.fixture(scope="session")
def split_octo(split_dend):
    """Tensor cube of the split dendriform: 27-dimensional, with nonzero tables in every operation."""
    return st.tensor_octo(split_dend, split_dend, split_dend)


@pytest.fixture(scope="session")
def integration_octo():
    d = st.integration_dendriform(2, unital=True)
    return st.tensor_octo(d, d, d)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdicts, one line per criterion, at the end of the run."""
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", []):
                if name == "acceptance":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
