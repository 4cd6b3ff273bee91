from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from frontcount.germ import MapGerm, normalize_corank2
from frontcount.parser import parse_polynomial
from frontcount.poly import VarContext

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repro")

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

UVW = VarContext(["u", "v", "w"])
XY = VarContext(["x", "y"])


def P(text, ctx=UVW):
    return parse_polynomial(text, ctx)


def map_germ(components, ctx=UVW):
    return MapGerm(ctx, tuple(P(c, ctx) for c in components))


D4 = ("u", "v*w", "2*u*v + 3*v^2 + w^2", "u*v^2 + 2*v^3 + 2*v*w^2")


def un_family(n):
    return ("u", "v*w", f"2*u^{n}*v + 3*v^2 + w^2", f"u^{n}*v^2 + 2*v^3 + 2*v*w^2")


def d5_pullback(n):
    return (
        "u",
        "v*w",
        f"2*u^{n}*v + 3*u*v^2 + 4*v^3 + w^2",
        f"u^{n}*v^2 + 2*u*v^3 + 3*v^4 + 2*v*w^2",
    )


def corank2(components, ctx=UVW):
    return normalize_corank2(map_germ(components, ctx)).germ


@pytest.fixture
def uvw():
    return UVW


@pytest.fixture
def xy():
    return XY
