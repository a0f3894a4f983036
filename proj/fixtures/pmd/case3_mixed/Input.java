public class Input {
    boolean flip(boolean b) {
        if (b == true) {
            return false;
        } else {
            return true;
        }
    }
}
