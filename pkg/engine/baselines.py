"""
Closed-form measurement counts of non-adaptive reference schemes.
"""


def bkd_count(dim: int, projective: bool = True) -> int:
    """Settings needed by the non-adaptive (BKD) characterization of a unitary channel.

    Projective measurements need 2d^2 - d settings; with M = 2d outcomes
    per non-projective measurement the count is (M + 1) d - d^2 = d^2 + d.
    """
    if dim < 2:
        raise ValueError(f"Dimension must be at least 2, got {dim}")
    if projective:
        return 2 * dim * dim - dim
    outcomes = 2 * dim
    return (outcomes + 1) * dim - dim * dim
