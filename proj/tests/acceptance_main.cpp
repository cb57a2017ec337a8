// Release gate: runs the ten acceptance criteria and prints one line each.
#include <iostream>

#include "expmbt/acceptance.hpp"

int main() {
    return expmbt::report_acceptance(std::cout) ? 0 : 1;
}
