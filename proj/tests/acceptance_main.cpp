#include <iostream>
#include "entlab/accept.hpp"
int main() { return entlab::accept::run_all(std::cout) ? 0 : 1; }
