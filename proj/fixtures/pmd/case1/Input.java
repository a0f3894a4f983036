public class Input {
    public static void main(String[] args) {
        int unused = 3;
        for (int i = 0; i < args.length; i++) {
            System.out.println(args[i]);
        }
    }
}
