#!/usr/bin/env python

from jetviber import lang, schouten


def main():
    """
    Check the bivectors of the wave equation u_xy = 0 and print their
    sections, see :py:func:`jetviber.schouten.check_bivector`

    usage:

        ./verify_wave.py

    """
    session = lang.load_session("wave")
    eq = session.equation
    for name, H in session.bivectors.items():
        check = schouten.check_bivector(H, eq)
        if not check.ok:
            print("{0}: fails condition ({1})".format(name, check.condition))
            continue
        phi = schouten.generating_section(H, eq)
        print("{0}: H_p = {1}".format(name, lang.print_canonical(phi.phi_p)))


if __name__ == "__main__":
    main()
