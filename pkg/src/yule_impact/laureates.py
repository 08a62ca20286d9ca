"""Published h-truncated Google Scholar summaries for ten prize winners.

Five chemistry Nobelists and five Fields medalists, data retrieved September
2011. Per-work counts were never released, so only the summary rows exist.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class LaureateRow:
    name: str
    field: str
    year: int
    h: int
    min_inlinks: int
    max_inlinks: int
    total_range: int
    total_inlinks: int
    r_squared: float
    f_stat: float


LAUREATES = (
    LaureateRow("Elias J. Corey", "chemistry", 1990, 97, 97, 1225, 1129, 23216, 0.6152, 36.77),
    LaureateRow("Alan J. Heeger", "chemistry", 2000, 123, 123, 3321, 3199, 49266, 0.7397, 65.35),
    LaureateRow("Osamu Shimomura", "chemistry", 2008, 50, 52, 929, 878, 5852, 0.6501, 42.73),
    LaureateRow("Ada E. Yonath", "chemistry", 2009, 36, 36, 637, 602, 4381, 0.4685, 20.28),
    LaureateRow("Ei-ichi Negishi", "chemistry", 2010, 49, 50, 797, 748, 6692, 0.4779, 21.05),
    LaureateRow("Simon K. Donaldson", "mathematics", 1986, 33, 36, 1233, 1198, 6864, 0.1846, 5.21),
    LaureateRow("Gerd Faltings", "mathematics", 1986, 27, 29, 950, 922, 3694, 0.3004, 9.88),
    LaureateRow("Maxim L. Kontsevich", "mathematics", 1998, 31, 37, 1742, 1706, 8462, 0.3580, 12.83),
    LaureateRow("Ngo Bao Chau", "mathematics", 2010, 13, 13, 74, 62, 343, 0.0072, 0.17),
    LaureateRow("Elon Lindenstrauss", "mathematics", 2010, 15, 17, 150, 136, 759, 0.03797, 0.91),
)

# stated significance of each fit: "one_percent", "five_percent" or "none"
STATED_SIGNIFICANCE = {
    "Elias J. Corey": "one_percent",
    "Alan J. Heeger": "one_percent",
    "Osamu Shimomura": "one_percent",
    "Ada E. Yonath": "one_percent",
    "Ei-ichi Negishi": "one_percent",
    "Simon K. Donaldson": "five_percent",
    "Gerd Faltings": "one_percent",
    "Maxim L. Kontsevich": "one_percent",
    "Ngo Bao Chau": "none",
    "Elon Lindenstrauss": "none",
}


def f_from_r_squared(r_squared: float, df: int = 23) -> float:
    return r_squared / (1.0 - r_squared) * df
