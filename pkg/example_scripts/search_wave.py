#!/usr/bin/env python
import sys

from jetviber import lang, search


def main(degree=0):
    """
    All bivectors of the wave equation whose coefficients are polynomials of
    the given degree in x and y.

    usage:

        ./search_wave.py [degree]

    """
    session = lang.load_session("wave")
    coeff_vars = lang.parse_variables("x, y", session)
    ansatz, vectors, bivectors = search.search(
        session.equation, coeff_vars=coeff_vars, degree=degree
    )
    print("{0}, dimension {1}".format(ansatz, len(vectors)))
    for H in bivectors:
        print("{0} = {1}".format(H.name, lang.print_canonical(H.H_u)))


if __name__ == "__main__":
    if len(sys.argv) > 1:
        main(int(sys.argv[1]))
    else:
        main()
