#include <iostream>

int main() {
    std::cout << "pairgraft (placeholder)\n";
    return 0;
}
