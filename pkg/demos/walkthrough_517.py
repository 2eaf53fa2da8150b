"""Walk through X_{5,1,7}: resolution, degrees of F(-nK), squares, index bound.

    python3 demos/walkthrough_517.py
"""
from sltcalc.fullsheaf import fullsheaf_degrees, fullsheaf_oracle, nu, t_min_closed_form
from sltcalc.index_bound import verify_index_bound
from sltcalc.pairing import pair, toric_pair_oracle
from sltcalc.slt_model import build_classT, gorenstein_index


def main():
    M = build_classT(5, 1, 7)
    print(f"{M.label}: type ({M.order}, {M.weight_s}), chain {M.chain.selfInt}, index {gorenstein_index(M)}")
    print(f"a/b = {M.a}/{M.b} = {list(M.q)}, curves in chain order {M.chain_order}")
    print()
    print(" n  nu(n)            oracle  T_min     nu^2  toric")
    for n in range(1, M.m):
        deg = fullsheaf_degrees(M, n)
        agree = "yes" if fullsheaf_oracle(M, n) == deg else "NO"
        v = nu(M, n)
        (s, t), = t_min_closed_form(M, n)
        print(f"{n:2d}  {str(tuple(deg.values())):15s}  {agree:6s}  ({s}, {t})".ljust(43)
              + f"{str(pair(M, v, v)):4s}  {toric_pair_oracle(M, v, v)}")
    print()
    for n in range(1, M.m):
        r = verify_index_bound(M, n)
        print(f"|{n}K|: D.D' = {r['DDprime']}, index {r['index']} <= B = {r['B']}: {r['ok']}")


if __name__ == "__main__":
    main()
