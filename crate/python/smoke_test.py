"""Smoke test of the pyrcmlab extension module.

Build and install it first, e.g. `pip install --no-build-isolation -e crates/py`.
"""

import json
import math

import pyrcmlab as rl


def main():
    assert rl.psi_exponent(0.0) == 2.0
    assert abs(rl.psi_exponent(rl.GAMMA_C) - 4.0) < 1e-12

    cycle = rl.Network.from_csv(
        "x1,y1,x2,y2,log_conductance\n0,0,1,0,0\n1,0,1,1,0\n1,1,0,1,0\n0,1,0,0,0\n"
    )
    r = math.exp(cycle.log_resistance([(0, 0)], [(1, 0)]))
    assert abs(r - 0.75) < 1e-12, r
    currents = cycle.currents([(0, 0)], [(1, 0)])
    assert len(currents) == 4

    unit = rl.Network.unit(4)
    lr = unit.log_crossing(4, "lr")
    assert abs(lr - math.log(8 / 9)) < 1e-12
    assert abs(unit.reciprocal().log_crossing(4, "ud") - lr) < 1e-12

    flat = rl.Field.constant(8, 0.0)
    assert rl.return_probability(flat, 0.0, 1) == 0.25
    assert abs(rl.return_probability(flat, 0.0, 3) - rl.simple_walk_return(3)) < 1e-15
    assert abs(rl.exit_time(rl.Field.constant(2, 0.0), 0.0, 1) - 4.5) < 1e-12

    f = rl.Field.pinned(6, seed=3, margin=2.0)
    assert f.get(0, 0) == 0.0 and len(f) == 169
    assert f.values == rl.Field.pinned(6, seed=3, margin=2.0).values
    path = rl.simulate_walk(f, 0.5, 50, 1, "reflect")
    assert len(path) == 51 and path[0] == (0.0, 0, 0)

    try:
        rl.psi_exponent(-1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative gamma accepted")

    cfg = {"quantity": "volume", "gammas": [0.0], "sizes": [8, 16, 32], "seed": 1}
    report = json.loads(rl.run_experiment(json.dumps(cfg)))
    assert abs(report[0]["slope"] - 2.0) < 1e-12
    print("pyrcmlab smoke test passed")


if __name__ == "__main__":
    main()
