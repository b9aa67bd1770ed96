#!/usr/bin/env python

from jetviber import jetcore, lang, schouten


def main():
    """
    Schouten brackets on u_xyz = 0: B3 is Poisson, the bracket of B4 with
    itself is not, and only the part of [[B3,B3]] above p-order 5 is printed
    for g = u_xy.

    usage:

        ./uxyz_brackets.py

    """
    session = lang.load_session("uxyz")
    for block, name in (("gx", "B3"), ("g1", "B4")):
        instance = session.instance(block)
        ok, bracket = schouten.is_poisson(instance.bivectors[name], instance.equation)
        print("{0} under {1}: Poisson {2}".format(name, block, ok))
        if not ok:
            print("    [[{0},{0}]] = {1}".format(name, lang.print_canonical(bracket)))
    instance = session.instance("gu")
    B3 = instance.bivectors["B3"]
    bracket = schouten.schouten_bracket(B3, B3, instance.equation)
    top = jetcore.grade_filter(bracket, 5, complement=True)
    print("[[B3,B3]] above order 5: {0}".format(lang.print_canonical(top)))


if __name__ == "__main__":
    main()
