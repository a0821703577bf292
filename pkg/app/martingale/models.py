"""
Martingale models
"""
from dataclasses import dataclass


@dataclass(frozen=True, eq=False)
class MartingaleSequence:
    """Levels E_0 g = g, E_1 g, ..., E_depth g of a backward martingale"""
    levels: tuple

    @property
    def depth(self):
        return len(self.levels) - 1

    @property
    def limit(self):
        """E_depth g, the last level"""
        return self.levels[-1]

    def __getitem__(self, n):
        return self.levels[n]
