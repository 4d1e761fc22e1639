"""Published coefficient tables for the most reliable graphs with n = 5, 6, 7.

Each row lists s_{m-1}, s_{m-2}, ..., s_{n-1}. Where no single graph is
best for every p the table has two rows, labelled 'a' (best for small p)
and 'b' (best for large p).
"""

from __future__ import annotations

from dataclasses import dataclass

PUBLISHED: dict[int, list[tuple[int, str, tuple[int, ...]]]] = {
    5: [
        (5, "", (5,)),
        (6, "", (6, 12)),
        (7, "", (7, 20, 24)),
        (8, "", (8, 28, 52, 45)),
        (9, "", (9, 36, 82, 111, 75)),
        (10, "", (10, 45, 120, 205, 222, 125)),
    ],
    6: [
        (6, "", (6,)),
        (7, "", (7, 16)),
        (8, "", (8, 26, 36)),
        (9, "", (9, 36, 78, 81)),
        (10, "", (10, 45, 116, 177, 135)),
        (11, "a", (11, 55, 163, 309, 368, 225)),
        (11, "b", (11, 55, 163, 310, 370, 224)),
        (12, "", (12, 66, 220, 489, 744, 740, 384)),
        (13, "", (13, 78, 286, 771, 1249, 1552, 1292, 576)),
        (14, "", (14, 91, 364, 999, 1978, 2877, 3040, 2196, 864)),
        (15, "", (15, 105, 455, 1365, 2997, 4945, 6165, 5700, 3660, 1296)),
    ],
    7: [
        (7, "", (7,)),
        (8, "", (8, 21)),
        (9, "", (9, 33, 51)),
        (10, "", (10, 44, 104, 117)),
        (11, "", (11, 55, 159, 273, 231)),
        (12, "", (12, 66, 216, 456, 612, 432)),
        (13, "", (13, 78, 284, 690, 1146, 1248, 720)),
        (14, "", (14, 91, 364, 994, 1932, 2668, 2460, 1200)),
        (15, "a", (15, 105, 455, 1360, 2946, 4704, 5464, 4320, 1840)),
        (15, "b", (15, 105, 455, 1360, 2946, 4705, 5465, 4305, 1805)),
        (16, "", (16, 120, 560, 1817, 4328, 7766, 10548, 10628, 7396, 2800)),
        (17, "", (17, 136, 680, 2379, 6169, 1226, 18762, 22226, 19808, 12320, 4200)),
        (18, "", (18, 153, 816, 3060, 8562, 18485, 31344, 41964, 44000, 35094, 19716, 6125)),
        (19, "", (19, 171, 969, 3876, 11624, 27073, 49985, 73888, 87468, 81976, 58958, 30109, 8575)),
        (20, "", (20, 190, 1140, 4845, 15502, 38725, 77240, 124605, 163400, 173646, 147500, 96915,
                  45530, 12005)),
        (21, "", (21, 210, 1330, 5985, 20349, 54257, 116175, 202755, 290745, 343140, 331506, 258125,
                  156555, 68295, 16807)),
    ],
}


@dataclass(frozen=True)
class Mismatch:
    n: int
    m: int
    label: str
    k: int  # coefficient index s_k; -1 when a whole row is missing
    published: int | None
    computed: int | None

    def describe(self) -> str:
        row = f"m={self.m}{self.label}"
        if self.k < 0:
            return f"n={self.n} {row}: row present in only one table"
        return f"n={self.n} {row} s_{self.k}: published {self.published}, computed {self.computed}"


def diff_rows(n: int, rows, m_values=None) -> list[Mismatch]:
    """Entry-by-entry differences between computed rows and the published table.

    ``rows`` is an iterable of (m, label, descending coefficients).
    """
    ref = {(m, lab): vals for m, lab, vals in PUBLISHED[n] if m_values is None or m in m_values}
    got = {(m, lab): tuple(vals) for m, lab, vals in rows if m_values is None or m in m_values}
    out = []
    for key in sorted(set(ref) | set(got)):
        m, lab = key
        if key not in ref or key not in got:
            out.append(Mismatch(n, m, lab, -1, None, None))
            continue
        a, b = ref[key], got[key]
        width = max(len(a), len(b))
        for i in range(width):
            x = a[i] if i < len(a) else None
            y = b[i] if i < len(b) else None
            if x != y:
                out.append(Mismatch(n, m, lab, m - 1 - i, x, y))
    return out
