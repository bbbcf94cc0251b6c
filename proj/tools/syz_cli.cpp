#include <iostream>
int main() { std::cout << "syz: not yet implemented\n"; return 2; }
