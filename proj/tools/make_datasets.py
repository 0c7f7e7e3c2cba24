#!/usr/bin/env python3
"""Regenerate the bundled centerline datasets in data/."""
import math
import os

HERE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def write(name, rows, radius=False):
    with open(os.path.join(HERE, name), "w", newline="\n") as f:
        f.write("x,y,z,r\n" if radius else "x,y,z\n")
        for row in rows:
            f.write(",".join(repr(round(v, 12)) for v in row) + "\n")


def straight():
    # 50 mm along x, 1 mm spacing.
    return [(i * 1e-3, 0.0, 0.0) for i in range(51)]


def s_curve(amplitude=0.01, bend=0.04, lead=0.01):
    # Straight lead-in, raised-cosine lateral shift, straight lead-out.
    rows = []
    n = int(round((2 * lead + bend) / 1e-3))
    for i in range(n + 1):
        x = i * 1e-3
        u = min(max((x - lead) / bend, 0.0), 1.0)
        rows.append((x, amplitude / 2 * (1 - math.cos(math.pi * u)), 0.0))
    return rows


def helix(radius=0.01, pitch=0.005, turns=1.5, per_turn=32):
    # Nodes land on multiples of pi/2 so every coordinate extremum is a node.
    rows = []
    n = int(turns * per_turn)
    for i in range(n + 1):
        t = 2 * math.pi * turns * i / n
        r_vessel = 0.0022 + 0.0002 * math.cos(t / 3)
        rows.append((radius * math.cos(t), radius * math.sin(t), pitch * t, r_vessel))
    return rows


if __name__ == "__main__":
    write("straight.csv", straight())
    write("s_curve.csv", s_curve())
    write("helix.csv", helix(), radius=True)
