import java.util.List;

public class Input {
    public static void main(String[] args) {
        System.out.println("value");
    }
}
