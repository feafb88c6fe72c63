#!/usr/bin/env python3
"""Smoke tests for the ccopt Python module."""
import math
import sys

import ccopt


def check(cond, what):
    if not cond:
        print(f"FAIL {what}")
        sys.exit(1)


pop = ccopt.zipf(4, 0.0)
check(all(math.isclose(p, 0.25) for p in pop.probs), "zipf gamma=0 is uniform")

pmf, perm = ccopt.from_weights([1.0, 3.0])
check(perm == [2, 1], "from_weights permutation")
check(math.isclose(ccopt.tail_sum(pmf, 2), 0.25), "tail_sum")

inst = ccopt.Instance(2, 2, 1.0, ccopt.zipf(2, 0.0))
res = ccopt.optimize_uniform_lp(2, 2, 1.0)
check(math.isclose(res.value, 0.5, abs_tol=1e-8), "uniform LP value")
check(math.isclose(res.partition.z[1], 0.5, abs_tol=1e-7), "uniform LP solution")

opt = ccopt.optimize_placement(inst)
check(math.isclose(opt.value, 0.5, abs_tol=1e-8), "placement LP value")
check(ccopt.is_monotone(opt.partition), "optimal rows monotone")
check(opt.diagnostics["evaluator_check"] <= 1e-8, "evaluator agrees with LP objective")

y = ccopt.SymmetricPartition([[0.0, 0.5, 0.0], [0.0, 0.5, 0.0]])
x = ccopt.expand_symmetric(y)
check(math.isclose(ccopt.avg_load_bruteforce(x, inst), 0.5, abs_tol=1e-12), "brute-force evaluator")
check(math.isclose(ccopt.avg_load_monotone(y, inst), 0.5, abs_tol=1e-12), "closed-form evaluator")

cert = ccopt.verify_kkt_uniform(ccopt.uniform_closed_form(2, 2, 1.0).partition, 2, 2, 1.0)
check(cert.valid and math.isclose(cert.theta, 0.75), "dual certificate")

check(ccopt.lb_genie(inst).value == ccopt.lb_uniform(2, 2, 1.0), "genie bound reduction")

real = ccopt.quantize(x, 4, inst, seed=7)
d = ccopt.DemandVector([1, 2])
t = ccopt.deliver_zero_pad(real, d)
check(t.total_units() == 2, "simulated units at F=4")
check(ccopt.decode(real, t, d), "decode")
check(ccopt.coloring_check(real, d), "coloring")
check(ccopt.deliver_hcd(real, d).total_units() == t.total_units(), "appending equals zero padding")

try:
    ccopt.zipf(0, 1.0)
    check(False, "zipf(0) should raise")
except ValueError:
    pass

print("python smoke ok")
