import numpy as np
import pytest

from lhdef.catalog import ClassTag, make_class
from lhdef.verification import normalized_diff, sample_points

ALL_TAGS = [ClassTag.P2, ClassTag.I4, ClassTag.I5]


@pytest.fixture(params=ALL_TAGS, ids=[t.value for t in ALL_TAGS])
def class_system(request):
    return make_class(request.param)


def points_for(tag, n=100, seed=7):
    return sample_points(ClassTag(tag), np.random.default_rng(seed), n)


def pairs_for(tag, n=50, seed=11):
    rng = np.random.default_rng(seed)
    return [a + b for a, b in zip(sample_points(ClassTag(tag), rng, n),
                                  sample_points(ClassTag(tag), rng, n))]


def max_nd(values_a, values_b):
    return max(normalized_diff(a, b) for a, b in zip(values_a, values_b))


def assert_grad_matches_fd(field, pts, step=1e-5, rtol=1e-6):
    """Field-type contract: analytic gradient vs central differences."""
    for p in pts:
        g = field.grad(*p)
        for i in range(len(p)):
            hi = list(p)
            lo = list(p)
            hi[i] += step
            lo[i] -= step
            fd = (field.eval(*hi) - field.eval(*lo)) / (2.0 * step)
            assert abs(g[i] - fd) <= rtol * (1.0 + abs(g[i])), (
                f"gradient component {i} at {p}: analytic {g[i]}, fd {fd}"
            )


def assert_jacobian_matches_fd(field, pts, step=1e-5, rtol=1e-6):
    for p in pts:
        jac = field.jacobian(*p)
        for j in range(2):
            hi = list(p)
            lo = list(p)
            hi[j] += step
            lo[j] -= step
            vhi = field.eval(*hi)
            vlo = field.eval(*lo)
            for i in range(2):
                fd = (vhi[i] - vlo[i]) / (2.0 * step)
                assert abs(jac[i][j] - fd) <= rtol * (1.0 + abs(jac[i][j])), (
                    f"jacobian[{i}][{j}] at {p}: analytic {jac[i][j]}, fd {fd}"
                )
