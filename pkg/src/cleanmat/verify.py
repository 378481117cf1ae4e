"""Independent re-verification of every certificate kind.

These checks use only ring primitives (multiplication, evaluation, unit
tests) and never consult the search code, so a certificate accepted here is
evidence on its own.  Each verifier returns a list of failure strings; empty
means valid.
"""

from __future__ import annotations

from .errors import VerificationFailed
from .factor import (
    Block,
    GSPCertificate,
    GSRCCertificate,
    SPCertificate,
    SRCCertificate,
    block_target,
)
from .matrices import (
    PiRegularCertificate,
    SquareMatrix,
    StrongCleanCertificate,
)
from .polys import Poly
from .rings import Ring, is_complete_orthogonal


def verify_src(h: Poly, cert: SRCCertificate) -> list[str]:
    R = h.ring
    fails = []
    if not cert.f0.is_monic or not cert.f1.is_monic:
        fails.append("factors are not monic")
    if cert.f0 * cert.f1 != h:
        fails.append("f0 * f1 != h")
    if not R.is_unit(cert.f0(R.zero)):
        fails.append("f0(0) is not a unit")
    if not R.is_unit(cert.f1(R.one)):
        fails.append("f1(1) is not a unit")
    if cert.kind == "SRC":
        if cert.bezout_u is None or cert.bezout_v is None:
            fails.append("SRC certificate lacks a Bezout pair")
        elif cert.bezout_u * cert.f0 + cert.bezout_v * cert.f1 != Poly.one(R):
            fails.append("Bezout identity u*f0 + v*f1 = 1 fails")
    return fails


def verify_sp(h: Poly, cert: SPCertificate) -> list[str]:
    R = h.ring
    fails = []
    if not cert.h0.is_monic or not cert.p0.is_monic:
        fails.append("factors are not monic")
    if cert.h0 * cert.p0 != h:
        fails.append("h0 * p0 != h")
    if not R.is_unit(cert.h0(R.zero)):
        fails.append("h0(0) is not a unit")
    d = cert.p0.degree
    for i in range(d):
        if not R.radical_membership(cert.p0.coeff(i)).in_nil:
            fails.append(f"p0 coefficient {i} is not nilpotent")
    return fails


def _verify_blocks(h: Poly, R: Ring, blocks: list[Block], leaf) -> list[str]:
    fails = []
    if not is_complete_orthogonal(R, [b.idempotent for b in blocks]):
        fails.append("block idempotents are not a complete orthogonal set")
    if len(blocks) > h.degree + 1:
        fails.append(f"{len(blocks)} blocks exceed the deg(h)+1 bound")
    covered = sorted(i for b in blocks for i in b.support)
    if covered != list(range(R.num_stalks)):
        fails.append("block supports do not partition the stalks")
    for b in blocks:
        target = block_target(R, b.support)
        if b.idempotent.ring.key != R.key:
            fails.append("block idempotent lives in the wrong ring")
            continue
        if R.idempotent_support(b.idempotent) != b.support:
            fails.append("block idempotent does not match its support")
        hb = h if target is R else h.on_block(b.support)
        for msg in leaf(hb, b.cert):
            fails.append(f"block {b.support}: {msg}")
    return fails


def verify_gsrc(h: Poly, R: Ring, cert: GSRCCertificate) -> list[str]:
    return _verify_blocks(h, R, cert.blocks, verify_src)


def verify_gsp(h: Poly, R: Ring, cert: GSPCertificate) -> list[str]:
    return _verify_blocks(h, R, cert.blocks, verify_sp)


def verify_strong_clean(A: SquareMatrix, cert: StrongCleanCertificate) -> list[str]:
    fails = []
    I = SquareMatrix.identity(A.ring, A.n)
    if cert.E @ cert.E != cert.E:
        fails.append("E is not idempotent")
    if cert.E + cert.U != A:
        fails.append("E + U != A")
    if cert.E @ cert.U != cert.U @ cert.E:
        fails.append("E and U do not commute")
    if cert.U @ cert.U_inv != I or cert.U_inv @ cert.U != I:
        fails.append("U_inv is not a two-sided inverse of U")
    return fails


def verify_pi_regular(A: SquareMatrix, cert: PiRegularCertificate) -> list[str]:
    fails = []
    if cert.k < 1:
        fails.append("exponent k must be >= 1")
        return fails
    Ak = A**cert.k
    Ak1 = Ak @ A
    if Ak1 @ cert.X != Ak:
        fails.append("A^{k+1} X != A^k")
    if cert.Y @ Ak1 != Ak:
        fails.append("Y A^{k+1} != A^k")
    return fails


def ensure(failures: list[str]):
    if failures:
        raise VerificationFailed(failures)
