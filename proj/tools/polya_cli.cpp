#include "polya/int.hpp"
#include <iostream>

int main() {
    std::cout << "polya cli placeholder\n";
    return 0;
}
