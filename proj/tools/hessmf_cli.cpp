#include <iostream>

int main() {
    std::cout << "hessmf cli placeholder\n";
    return 0;
}
