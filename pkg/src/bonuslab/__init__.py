"""Desk-scale deterministic lab for stochastic bonus-reward shaping on DDPG+HER."""

from bonuslab.rng import Rng
from bonuslab.shaping import BonusConfig, Stage, apply_bonus, parse_bonus

__all__ = ["Rng", "BonusConfig", "Stage", "apply_bonus", "parse_bonus"]
__version__ = "0.1.0"
