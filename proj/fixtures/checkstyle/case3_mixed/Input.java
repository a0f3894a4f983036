public class Input {
    void run(boolean flag) {
        if (flag)
            System.out.println(1);
    }
}
