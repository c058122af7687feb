"""GF(2) linear algebra on int bitsets (bit i is coordinate i)."""

from __future__ import annotations


def rref(rows: list[int], n_cols: int) -> list[int]:
    """Reduced row-echelon basis of the span of the given rows."""
    basis: list[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            for i, b in enumerate(basis):
                low = row & -row
                if b & low:
                    basis[i] = b ^ row
            basis.append(row)
            basis.sort(key=lambda r: r & -r)
    return basis


def rank(rows: list[int], n_cols: int) -> int:
    return len(rref(rows, n_cols))


def in_span(vec: int, basis: list[int]) -> bool:
    """Membership of vec in the span of an rref basis."""
    for b in basis:
        low = b & -b
        if vec & low:
            vec ^= b
    return vec == 0


def kernel_basis(constraint_rows: list[int], n_cols: int) -> list[int]:
    """Basis of the solution space {x : row . x = 0 mod 2 for every row}."""
    reduced = rref(constraint_rows, n_cols)
    pivot_cols = set()
    for b in reduced:
        pivot_cols.add((b & -b).bit_length() - 1)
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    out = []
    for fc in free_cols:
        vec = 1 << fc
        for b in reduced:
            if (b >> fc) & 1:
                pc = (b & -b).bit_length() - 1
                vec ^= 1 << pc
        out.append(vec)
    return rref(out, n_cols)


def span_members(basis: list[int]) -> list[int]:
    """All 2^rank members of the span, in Gray-code-free deterministic order."""
    members = [0]
    for b in basis:
        members += [m ^ b for m in members]
    return sorted(members)
