"""Closed-form survival element against the quadrature oracle on each preset window.

Prints, per preset, the worst relative mismatch of the memory integral and of
rho, and the complete/Markov deviation at the end of the window.
"""

import math

import numpy as np

from twospin.cli import PRESETS, parse_config
from twospin.evolution import memory_integral, rho_element
from twospin.oracle import rho_reference, time_integral


def crosscheck(n_times=20):
    print(f"{'preset':8s}{'k^2/d^2':>10s}{'memory rel':>12s}{'rho rel':>10s}{'end dev':>10s}")
    for name in PRESETS:
        cfg = parse_config(preset=name)
        p = cfg.evolution_params()
        mem = rho = 0.0
        for t in np.geomspace(cfg.t_end * 1e-4, cfg.t_end, n_times):
            t = float(t)
            ref = time_integral(t, p.omega0, p.delta)
            mem = max(mem, abs(memory_integral(t, p.omega0, p.delta) / ref - 1))
            rho = max(rho, abs(rho_element(t, p) / rho_reference(t, p) - 1))
        markov = math.exp(-2 * p.gamma_minus1 * cfg.t_end)
        dev = rho_element(cfg.t_end, p) / markov - 1
        print(f"{name:8s}{(p.kappa / p.delta) ** 2:10.3g}{mem:12.1e}{rho:10.1e}{dev:10.2%}")


if __name__ == "__main__":
    crosscheck()
